#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coarsekit {

// Points are canonically indexed naturals. Every "least witness" rule in the
// library uses this index order.
using Point = std::uint64_t;

// Sorted, deduplicated.
using PointSet = std::vector<Point>;

inline constexpr Point kNoLimit = std::numeric_limits<Point>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ball evaluation was requested at an argument outside the halo.
class HaloExhausted : public Error {
 public:
  HaloExhausted(Point point, Point halo)
      : Error("halo exhausted: point " + std::to_string(point) +
              " outside halo " + std::to_string(halo)),
        point_(point),
        halo_(halo) {}
  Point point() const { return point_; }
  Point halo() const { return halo_; }

 private:
  Point point_;
  Point halo_;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

PointSet make_set(std::vector<Point> points);
PointSet range_set(Point lo, Point hi);  // [lo, hi)
bool contains(const PointSet& s, Point p);
bool is_subset(const PointSet& a, const PointSet& b);
PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);

// Multiplication / power with overflow detection.
std::optional<Point> checked_mul(Point a, Point b);
std::optional<Point> checked_pow(Point base, unsigned exponent);

struct GroundSet {
  enum class Kind { finite, countable };

  Kind kind = Kind::countable;
  Point size = 0;  // meaningful for finite grounds only

  static GroundSet finite(Point n);
  static GroundSet countable() { return {Kind::countable, 0}; }

  bool is_finite() const { return kind == Kind::finite; }
  bool contains(Point p) const { return !is_finite() || p < size; }
  Point limit() const { return is_finite() ? size : kNoLimit; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;
};

// Checks quantify over points with index < size; ball evaluations are only
// ever requested at arguments with index < halo.
struct Window {
  Point size = 0;
  Point halo = 0;

  static constexpr unsigned kDefaultDepth = 3;

  static Window of(Point size, std::optional<Point> halo = std::nullopt);
  static Window unbounded() { return {kNoLimit, kNoLimit}; }

  Window clamped(const GroundSet& ground) const;

  void require(Point x) const {
    if (x >= halo) throw HaloExhausted(x, halo);
  }
  bool in_halo(Point x) const { return x < halo; }

  friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace coarsekit
