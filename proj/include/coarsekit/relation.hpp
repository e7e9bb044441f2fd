#pragma once

// Exact algebra of entourages (reflexive binary relations) over finite
// windows of a finite or countable ground set.
//
// An entourage is a pair of ball functions: fwd(x) = E[x] and
// bwd(x) = E^{-1}[x]. Both are stored because inversion of a countable
// relation is not computable from the forward balls alone. Every evaluation
// takes a Window and throws HaloExhausted when its argument lies outside the
// halo; checks turn that into UNKNOWN instead of truncating a ball.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/core.hpp"
#include "coarsekit/order.hpp"
#include "coarsekit/verdict.hpp"

namespace coarsekit {

// Declared ball growth: uniformly bounded, finite but unbounded, or infinite.
enum class Growth { finitary, unbounded, infinite };

class EntourageImpl {
 public:
  virtual ~EntourageImpl() = default;

  virtual PointSet fwd(Point x, const Window& w) const = 0;
  virtual PointSet bwd(Point x, const Window& w) const = 0;
  virtual bool related(Point x, Point y, const Window& w) const;
  virtual json descriptor() const = 0;
  virtual Growth growth() const { return Growth::finitary; }
  // Largest |y - x| over pairs (x, y), when known.
  virtual std::optional<Point> displacement() const { return std::nullopt; }
};

class Entourage {
 public:
  explicit Entourage(std::shared_ptr<const EntourageImpl> impl);

  PointSet fwd(Point x, const Window& w = Window::unbounded()) const {
    w.require(x);
    return impl_->fwd(x, w);
  }
  PointSet bwd(Point x, const Window& w = Window::unbounded()) const {
    w.require(x);
    return impl_->bwd(x, w);
  }
  // (x, y) in E, i.e. y in E[x].
  bool related(Point x, Point y, const Window& w = Window::unbounded()) const {
    w.require(x);
    return impl_->related(x, y, w);
  }

  json descriptor() const { return impl_->descriptor(); }
  std::string kind() const;
  Growth growth() const { return impl_->growth(); }
  std::optional<Point> displacement() const { return impl_->displacement(); }

  const std::shared_ptr<const EntourageImpl>& impl() const { return impl_; }

 private:
  std::shared_ptr<const EntourageImpl> impl_;
};

// A finitely described permutation of the ground set together with its
// inverse.
class Permutation {
 public:
  using Fn = std::function<Point(Point)>;

  Permutation(Fn apply, Fn inverse, json descriptor,
              std::optional<Point> displacement = std::nullopt);

  Point operator()(Point x) const { return apply_(x); }
  Point inverse(Point x) const { return inverse_(x); }
  const json& descriptor() const { return descriptor_; }
  std::optional<Point> displacement() const { return displacement_; }

 private:
  Fn apply_;
  Fn inverse_;
  json descriptor_;
  std::optional<Point> displacement_;
};

Permutation identity_permutation();
// Finitely supported; `mapping` lists (from, to) and must be a bijection of
// its support onto itself.
Permutation explicit_permutation(std::vector<std::pair<Point, Point>> mapping);
Permutation xor_permutation(Point mask);
// 2k <-> 2k+1.
Permutation even_odd_swap();
// Reverses the consecutive blocks of lengths 1, 3, 5, ... starting at offset
// 0 (block n occupies [n^2, (n+1)^2)). With `blocks` set, only blocks
// 0..blocks are reversed and every later point is fixed.
Permutation block_reversal(std::optional<Point> blocks);

Entourage diagonal();
// Reflexive closure of the listed pairs.
Entourage explicit_relation(std::span<const std::pair<Point, Point>> pairs);
// ball(x) = {x xor d : d < 2^bits}.
Entourage xor_block(unsigned bits);
// ball(x) = {y : |x - y| <= radius}, clipped to [0, limit).
Entourage bounded_shift(Point radius, Point limit = kNoLimit);
// ball(x) = points agreeing with x on every base-kappa digit above alpha.
Entourage macrocube_level(Point kappa, unsigned alpha, Point limit = kNoLimit);
// E_B: ball(x) = B if x in B, {x} otherwise.
Entourage block_entourage(PointSet b);
// ball(x) = {g(x) : g in perms}; perms should include the identity.
Entourage perm_generated(std::vector<Permutation> perms,
                         std::optional<json> descriptor = std::nullopt);

Entourage compose(const Entourage& e, const Entourage& f);
Entourage inverse(const Entourage& e);

PointSet ball(const Entourage& e, Point x, const Window& w = Window::unbounded());
PointSet ball_set(const Entourage& e, const PointSet& a,
                  const Window& w = Window::unbounded());

// Reflexive, symmetric and transitive on the window, with every intermediate
// ball inside the halo.
Verdict is_cellular_entourage(const Entourage& e, const Window& w);

Verdict is_locally_finite(const Entourage& e, const Window& w);

// Least n with |E[x]| < n and |E^{-1}[x]| < n over the window; nullopt when
// the descriptor declares unbounded growth.
std::optional<std::size_t> finitary_bound(const Entourage& e, const Window& w);

// hull[x] = order interval from min E[x] to max E[x].
Entourage interval_hull(const Entourage& e, const PointOrder& ord);

// Invariant probes used by tests and space validation.
Verdict check_diagonal(const Entourage& e, const Window& w);
Verdict check_ball_duality(const Entourage& e, const Window& w);

}  // namespace coarsekit
