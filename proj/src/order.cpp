#include "coarsekit/order.hpp"

#include <string>

namespace coarsekit {

PointOrder::PointOrder(Compare compare, PrefixBound prefix_bound, json descriptor)
    : compare_(std::move(compare)),
      prefix_bound_(std::move(prefix_bound)),
      descriptor_(std::move(descriptor)) {}

namespace {

template <class Better>
Point extreme_of(const PointSet& a, Better better) {
  if (a.empty()) throw InvalidInput("extreme of an empty set");
  Point best = a.front();
  for (Point p : a)
    if (better(p, best)) best = p;
  for (Point p : a)
    if (better(p, best))
      throw NotWellFounded("order has no extreme element on input (point " +
                           std::to_string(p) + ")");
  return best;
}

}  // namespace

Point PointOrder::min_of(const PointSet& a) const {
  return extreme_of(a, [this](Point p, Point q) { return less(p, q); });
}

Point PointOrder::max_of(const PointSet& a) const {
  return extreme_of(a, [this](Point p, Point q) { return less(q, p); });
}

std::optional<PointSet> PointOrder::interval(Point a, Point b, const Window& w) const {
  auto bound = prefix_bound(b);
  if (!bound || *bound > w.halo) return std::nullopt;
  PointSet out;
  for (Point p = 0; p < *bound; ++p)
    if (compare(a, p) <= 0 && compare(p, b) <= 0) out.push_back(p);
  return out;
}

PointOrder natural_order() {
  return PointOrder([](Point a, Point b) { return a <=> b; },
                    [](Point y) -> std::optional<Point> { return y + 1; },
                    json{{"kind", "natural"}});
}

PointOrder explicit_order(std::vector<Point> ascending) {
  std::vector<Point> position;
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    Point p = ascending[k];
    if (p >= position.size()) position.resize(p + 1, kNoLimit);
    if (position[p] != kNoLimit)
      throw InvalidInput("explicit order lists point " + std::to_string(p) + " twice");
    position[p] = k;
  }
  // prefix_max[k] = 1 + largest index among the first k+1 listed points
  std::vector<Point> prefix_max(ascending.size());
  Point running = 0;
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    running = std::max(running, ascending[k] + 1);
    prefix_max[k] = running;
  }
  auto pos = [position](Point p) {
    if (p >= position.size() || position[p] == kNoLimit)
      throw InvalidInput("point " + std::to_string(p) + " not in explicit order");
    return position[p];
  };
  json desc{{"kind", "explicit"}, {"perm", ascending}};
  return PointOrder([pos](Point a, Point b) { return pos(a) <=> pos(b); },
                    [pos, prefix_max](Point y) -> std::optional<Point> {
                      return prefix_max[pos(y)];
                    },
                    std::move(desc));
}

PointOrder alternating_order() {
  return PointOrder(
      [](Point a, Point b) {
        if ((a & 1) != (b & 1)) return (a & 1) <=> (b & 1);
        return a <=> b;
      },
      [](Point y) -> std::optional<Point> {
        if (y & 1) return std::nullopt;  // every even point precedes y
        return y + 1;
      },
      json{{"kind", "alternating"}});
}

PointOrder pullback_order(std::vector<Point> keys, json descriptor) {
  std::vector<Point> sorted_keys = keys;
  std::sort(sorted_keys.begin(), sorted_keys.end());
  if (std::adjacent_find(sorted_keys.begin(), sorted_keys.end()) != sorted_keys.end())
    throw InvalidInput("pullback order keys are not distinct");
  auto key = [keys](Point p) {
    if (p >= keys.size())
      throw InvalidInput("point " + std::to_string(p) + " outside pullback order domain");
    return keys[p];
  };
  // bound_by_rank[r] = 1 + largest index among the r+1 smallest keys
  std::vector<Point> by_rank(keys.size());
  for (Point p = 0; p < keys.size(); ++p) {
    auto r = std::lower_bound(sorted_keys.begin(), sorted_keys.end(), keys[p]) -
             sorted_keys.begin();
    by_rank[r] = p;
  }
  std::vector<Point> bound_by_rank(keys.size());
  Point running = 0;
  for (std::size_t r = 0; r < by_rank.size(); ++r) {
    running = std::max(running, by_rank[r] + 1);
    bound_by_rank[r] = running;
  }
  return PointOrder(
      [key](Point a, Point b) { return key(a) <=> key(b); },
      [key, sorted_keys, bound_by_rank](Point y) -> std::optional<Point> {
        auto r = std::lower_bound(sorted_keys.begin(), sorted_keys.end(), key(y)) -
                 sorted_keys.begin();
        return bound_by_rank[r];
      },
      std::move(descriptor));
}

}  // namespace coarsekit
