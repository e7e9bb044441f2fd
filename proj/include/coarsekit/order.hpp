#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "coarsekit/core.hpp"
#include "coarsekit/verdict.hpp"

namespace coarsekit {

// The order has no least element on some explicit input (comparator is not
// a total order there).
class NotWellFounded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A total order on ground points.
//
// prefix_bound(y) is an exclusive index bound n such that every point p with
// p <= y (in this order) has index p < n, or nullopt when the initial segment
// below y is infinite. Interval enumeration and interval hulls rely on it.
class PointOrder {
 public:
  using Compare = std::function<std::strong_ordering(Point, Point)>;
  using PrefixBound = std::function<std::optional<Point>(Point)>;

  PointOrder(Compare compare, PrefixBound prefix_bound, json descriptor);

  std::strong_ordering compare(Point a, Point b) const { return compare_(a, b); }
  bool less(Point a, Point b) const { return compare_(a, b) < 0; }
  std::optional<Point> prefix_bound(Point y) const { return prefix_bound_(y); }
  const json& descriptor() const { return descriptor_; }

  Point min_of(const PointSet& a) const;
  Point max_of(const PointSet& a) const;

  // Points p with a <= p <= b, or nullopt when the interval cannot be
  // enumerated below the window's halo.
  std::optional<PointSet> interval(Point a, Point b, const Window& w) const;

 private:
  Compare compare_;
  PrefixBound prefix_bound_;
  json descriptor_;
};

PointOrder natural_order();

// Points listed from least to greatest; defined on the listed points only.
PointOrder explicit_order(std::vector<Point> ascending);

// 0, 2, 4, ..., 1, 3, 5, ... (order type omega + omega).
PointOrder alternating_order();

// p < q iff keys[p] < keys[q]; defined on p < keys.size(). Keys must be
// pairwise distinct.
PointOrder pullback_order(std::vector<Point> keys, json descriptor);

}  // namespace coarsekit
