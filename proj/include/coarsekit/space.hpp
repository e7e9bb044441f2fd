#pragma once

// Coarse structures represented by directed bases of entourages, together
// with bornologies, subspaces and the space-level checks.
//
// A base is either a finite declared list E_0..E_{n-1} or a generator of a
// countable chain. Checks search the tested prefix i < bound; exhausting a
// finite declared base yields FAILS, exhausting a countable one UNKNOWN.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "coarsekit/relation.hpp"

namespace coarsekit {

class CoarseSpace {
 public:
  using Generator = std::function<Entourage(std::size_t)>;
  // E_i o E_j is contained in E_{join(i, j)}.
  using Join = std::function<std::size_t(std::size_t, std::size_t)>;

  struct Options {
    bool chain = true;
    std::optional<std::size_t> length;  // nullopt: countable base
    Join join;
    bool point_transitive = false;
  };

  CoarseSpace(GroundSet ground, Generator base, json descriptor, Options options);

  static CoarseSpace from_list(GroundSet ground, std::vector<Entourage> base, bool chain,
                               json descriptor = nullptr);

  const GroundSet& ground() const { return ground_; }
  const json& descriptor() const { return descriptor_; }
  bool is_chain() const { return options_.chain; }
  bool point_transitive() const { return options_.point_transitive; }
  std::optional<std::size_t> base_length() const { return options_.length; }
  bool has_finite_base() const { return options_.length.has_value(); }
  std::optional<std::size_t> join(std::size_t i, std::size_t j) const;

  Entourage base(std::size_t i) const;

  // Number of base elements a search with this bound inspects.
  std::size_t levels(std::size_t bound) const;
  // True when a search with this bound inspects the entire (finite) base, so
  // exhausting it proves failure.
  bool bound_covers_base(std::size_t bound) const;

  // Same ground and first `levels` base elements, declared finite.
  CoarseSpace truncated(std::size_t levels) const;

  // Subspaces keep the map back to the parent's points.
  Point to_parent(Point p) const { return to_parent_ ? to_parent_(p) : p; }
  void set_parent_map(std::function<Point(Point)> f) { to_parent_ = std::move(f); }

 private:
  struct Cache;

  GroundSet ground_;
  Generator generator_;
  json descriptor_;
  Options options_;
  std::shared_ptr<Cache> cache_;
  std::function<Point(Point)> to_parent_;
};

// A subset of the ground: a finite explicit list, or a decidable countable
// set with an enumeration (nth) and its inverse (rank).
class Subset {
 public:
  static Subset of(PointSet points);
  static Subset all();
  static Subset evens();
  static Subset countable(std::function<bool(Point)> contains, std::function<Point(Point)> nth,
                          std::function<Point(Point)> rank, json descriptor);

  bool contains(Point p) const;
  bool is_finite() const { return finite_.has_value(); }
  const PointSet& points() const;
  Point nth(Point k) const;
  Point rank(Point p) const;
  const json& descriptor() const { return descriptor_; }

 private:
  std::optional<PointSet> finite_;
  std::function<bool(Point)> contains_;
  std::function<Point(Point)> nth_;
  std::function<Point(Point)> rank_;
  json descriptor_;
};

// Increasing chain B_0 ⊆ B_1 ⊆ ... of finite sets.
class Bornology {
 public:
  using Generator = std::function<PointSet(std::size_t)>;

  static Bornology chain(std::vector<PointSet> sets);
  // B_n = [0, n].
  static Bornology initial_segments();
  static Bornology generated(Generator sets, std::optional<std::size_t> length, json descriptor);

  PointSet set(std::size_t n) const;
  std::optional<std::size_t> length() const { return length_; }
  std::size_t levels(std::size_t bound) const;
  const json& descriptor() const { return descriptor_; }

  // Least n < bound with y ⊆ B_n.
  std::optional<std::size_t> level_of(const PointSet& y, std::size_t bound) const;
  // Least n < bound with p in B_n.
  std::optional<std::size_t> level_of(Point p, std::size_t bound) const;

 private:
  Generator sets_;
  std::optional<std::size_t> length_;
  json descriptor_;
};

Verdict is_connected(const CoarseSpace& s, const Window& w, std::size_t bound);

// Least (i, x) with y ⊆ ball(E_i, x). Centers are searched exactly through
// the backward balls of the points of y.
Verdict is_bounded(const CoarseSpace& s, const PointSet& y, std::size_t bound,
                   const Window& w = Window::unbounded());

// B_n = ball(E_n, 0).
Bornology bornology_of(const CoarseSpace& s);

// Base E_{B_n}.
CoarseSpace discrete_from_bornology(const Bornology& b, GroundSet ground = GroundSet::countable());

CoarseSpace subspace(const CoarseSpace& s, const Subset& y);

// Least i with every window point in E_i[y ∩ halo].
Verdict is_large(const CoarseSpace& s, const Subset& y, std::size_t bound, const Window& w);

Verdict is_cellular_space(const CoarseSpace& s, const Window& w, std::size_t bound);

// Diagonal containment, ball duality, chain inclusion and the declared join
// on the tested prefix.
Verdict validate_space(const CoarseSpace& s, const Window& w, std::size_t bound);

// A finite ground set that is connected is bounded, so asymptotic statements
// are vacuous on it; checks on such spaces are flagged.
bool finite_connected_flag(const CoarseSpace& s, std::size_t bound);

}  // namespace coarsekit
