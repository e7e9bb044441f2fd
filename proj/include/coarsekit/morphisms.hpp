#pragma once

// Maps between coarse spaces, selectors, and the order/selector criteria.

#include <functional>
#include <map>
#include <optional>

#include "coarsekit/hyperballean.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

class PointMap {
 public:
  using Fn = std::function<Point(Point)>;

  PointMap(Fn apply, std::optional<Fn> inverse, json descriptor);

  Point operator()(Point x) const { return apply_(x); }
  bool has_inverse() const { return inverse_.has_value(); }
  Point inverse(Point y) const;
  // The inverse as a map; throws InvalidInput without one.
  PointMap inverted() const;
  const json& descriptor() const { return descriptor_; }

 private:
  Fn apply_;
  std::optional<Fn> inverse_;
  json descriptor_;
};

PointMap identity_map();
PointMap constant_map(Point p);
// x -> table[x] on x < table.size(); an inverse is attached when the table is
// injective.
PointMap table_map(std::vector<Point> table);
PointMap permutation_map(const Permutation& p);

// A selector is evaluated on explicit finite sets only.
class SelectorUndefined : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SelectorFn {
 public:
  using Fn = std::function<Point(const PointSet&)>;

  SelectorFn(Fn select, json descriptor);

  Point operator()(const PointSet& a) const;
  const json& descriptor() const { return descriptor_; }

 private:
  Fn select_;
  json descriptor_;
};

// min under the order.
SelectorFn selector_from_order(const PointOrder& ord);
SelectorFn max_selector_from_order(const PointOrder& ord);
// Defined on the listed sets only.
SelectorFn table_selector(std::map<PointSet, Point> entries);
// min under a well-order; throws NotWellFounded when some input has no least
// element.
SelectorFn global_selector_from_wellorder(const PointOrder& ord, const CoarseSpace& s);
// Transfer of `inner` (a selector of the large subset y) to all of s along
// the base element H = E_h_index with s = H[y].
SelectorFn transfer_selector(const SelectorFn& inner, const CoarseSpace& s, const Subset& y,
                             std::size_t h_index, const Window& w = Window::unbounded());

// Mirrored clauses of the order / selector criteria share one witness F_j by
// default; per_case searches each clause separately.
enum class WitnessMode { shared, per_case };

// f(E_i[x]) ⊆ F_j[f(x)] for each domain window point, target balls evaluated
// under `target_window`.
Verdict is_macro_uniform(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                         const Window& w, std::size_t bound);
Verdict is_macro_uniform(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                         const Window& w, const Window& target_window, std::size_t bound);

Verdict is_asymorphism(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                       const Window& w, std::size_t bound);

Verdict is_selector(const SelectorFn& sel, const CoarseSpace& s, const SubsetFamily& family,
                    const Window& w, std::size_t bound);

Verdict prop1_criterion(const SelectorFn& sel, const CoarseSpace& s, const Window& w,
                        std::size_t bound, WitnessMode mode = WitnessMode::shared);

Verdict is_compatible_order(const PointOrder& ord, const CoarseSpace& s, const Window& w,
                            std::size_t bound, WitnessMode mode = WitnessMode::shared);

// Least violating clause of the criterion / compatibility condition for the
// pair (E_i, F_j) over the window, or nullopt. `side` restricts to one of the
// mirrored clauses: 0 = x chosen / x lesser, 1 = y chosen / y lesser,
// -1 = both.
std::optional<json> prop1_violation(const SelectorFn& sel, const CoarseSpace& s, std::size_t i,
                                    std::size_t j, const Window& w, int side = -1);
std::optional<json> compat_violation(const PointOrder& ord, const CoarseSpace& s, std::size_t i,
                                     std::size_t j, const Window& w, int side = -1);

struct CrosscheckReport {
  enum class Agreement { agree, unknown, split };

  Verdict selector;
  Verdict criterion;
  Agreement agreement = Agreement::unknown;

  json to_json() const;
};

CrosscheckReport crosscheck_prop1(const SelectorFn& sel, const CoarseSpace& s, const Window& w,
                                  std::size_t bound);

// Boundedness of the order interval [a, b].
Verdict interval_bounded(const PointOrder& ord, const CoarseSpace& s, Point a, Point b,
                         std::size_t bound, const Window& w = Window::unbounded());

struct DescentReport {
  Verdict on_space;
  Verdict on_discrete;
  // False only if the selector HOLDS on the space but FAILS on the discrete
  // space of its bornology.
  bool consistent = true;

  json to_json() const;
};

DescentReport descend_to_discrete(const SelectorFn& sel, const CoarseSpace& s, const Window& w,
                                  std::size_t bound);

}  // namespace coarsekit
