#pragma once

// Independent re-validation of FAILS counterexamples by direct ball
// evaluations.

#include <optional>
#include <string>

#include "coarsekit/io.hpp"

namespace coarsekit {

struct CheckInputs {
  std::optional<CoarseSpace> space;
  std::optional<CoarseSpace> codomain;
  std::optional<PointMap> map;
  std::optional<SelectorFn> selector;
  std::optional<PointOrder> order;
  std::optional<SubsetFamily> family;
  std::optional<Subset> subset;
  std::optional<std::pair<Point, Point>> interval;
  Window window = Window::of(64);
  std::size_t bound = 16;
};

// Check names: macro-uniform, asymorphism, selector, prop1, order-compat,
// interval-bounded, cellular, connected, large.
//
// Returns nullopt when `cex` is a genuine violation of the named property
// for these inputs, otherwise the reason it does not refute it.
std::optional<std::string> verify_counterexample(const std::string& check, const CheckInputs& in,
                                                 const json& cex);

}  // namespace coarsekit
