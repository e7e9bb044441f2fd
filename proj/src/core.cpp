#include "coarsekit/core.hpp"

namespace coarsekit {

PointSet make_set(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet range_set(Point lo, Point hi) {
  PointSet out;
  if (hi > lo) out.reserve(hi - lo);
  for (Point p = lo; p < hi; ++p) out.push_back(p);
  return out;
}

bool contains(const PointSet& s, Point p) {
  return std::binary_search(s.begin(), s.end(), p);
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::optional<Point> checked_mul(Point a, Point b) {
  Point r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<Point> checked_pow(Point base, unsigned exponent) {
  Point r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    auto next = checked_mul(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

GroundSet GroundSet::finite(Point n) {
  if (n == 0) throw InvalidInput("finite ground set must have at least one point");
  return {Kind::finite, n};
}

Window Window::of(Point size, std::optional<Point> halo) {
  Window w;
  w.size = size;
  if (halo) {
    w.halo = *halo;
  } else {
    auto h = checked_mul(size, 1 + kDefaultDepth);
    w.halo = h ? *h : kNoLimit;
  }
  if (w.halo < w.size) throw InvalidInput("halo must be at least the window size");
  return w;
}

Window Window::clamped(const GroundSet& ground) const {
  if (!ground.is_finite()) return *this;
  Window w = *this;
  w.size = std::min(w.size, ground.size);
  // A halo covering the whole finite ground can never be exhausted.
  if (w.halo >= ground.size) w.halo = kNoLimit;
  return w;
}

}  // namespace coarsekit
