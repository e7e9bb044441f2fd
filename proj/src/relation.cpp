#include "coarsekit/relation.hpp"

#include <cmath>
#include <map>

namespace coarsekit {

namespace {

constexpr Point kMaxBallSize = Point{1} << 24;

void require_ball_size(Point n) {
  if (n > kMaxBallSize)
    throw CapExceeded("ball of " + std::to_string(n) + " points exceeds enumeration cap");
}

std::optional<Point> add_displacement(std::optional<Point> a, std::optional<Point> b) {
  if (!a || !b) return std::nullopt;
  Point r = 0;
  if (__builtin_add_overflow(*a, *b, &r)) return std::nullopt;
  return r;
}

Growth worst(Growth a, Growth b) { return std::max(a, b); }

class ExplicitImpl final : public EntourageImpl {
 public:
  explicit ExplicitImpl(std::span<const std::pair<Point, Point>> pairs) {
    for (auto [x, y] : pairs) {
      if (x == y) continue;
      fwd_[x].push_back(y);
      bwd_[y].push_back(x);
      pairs_.emplace_back(x, y);
    }
    for (auto& [_, v] : fwd_) v = make_set(std::move(v));
    for (auto& [_, v] : bwd_) v = make_set(std::move(v));
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }
  PointSet fwd(Point x, const Window&) const override { return lookup(fwd_, x); }
  PointSet bwd(Point x, const Window&) const override { return lookup(bwd_, x); }
  json descriptor() const override {
    json p = json::array();
    for (auto [x, y] : pairs_) p.push_back({x, y});
    return {{"kind", "explicit"}, {"pairs", p}};
  }
  std::optional<Point> displacement() const override {
    Point d = 0;
    for (auto [x, y] : pairs_) d = std::max(d, x > y ? x - y : y - x);
    return d;
  }

 private:
  static PointSet lookup(const std::map<Point, PointSet>& m, Point x) {
    auto it = m.find(x);
    if (it == m.end()) return {x};
    PointSet out = it->second;
    out.insert(std::lower_bound(out.begin(), out.end(), x), x);
    return out;
  }
  std::map<Point, PointSet> fwd_;
  std::map<Point, PointSet> bwd_;
  std::vector<std::pair<Point, Point>> pairs_;
};

// Balls are the aligned blocks [x - x % width, ... + width) clipped to limit.
class AlignedBlockImpl : public EntourageImpl {
 public:
  AlignedBlockImpl(Point width, Point limit) : width_(width), limit_(limit) {}
  PointSet fwd(Point x, const Window&) const override {
    Point lo = x - x % width_;
    Point hi = (kNoLimit - lo < width_) ? kNoLimit : lo + width_;
    hi = std::min(hi, limit_);
    require_ball_size(hi - lo);
    return range_set(lo, hi);
  }
  PointSet bwd(Point x, const Window& w) const override { return fwd(x, w); }
  bool related(Point x, Point y, const Window&) const override {
    return y < limit_ && x / width_ == y / width_;
  }
  std::optional<Point> displacement() const override { return width_ - 1; }

 protected:
  Point width_;
  Point limit_;
};

class XorBlockImpl final : public AlignedBlockImpl {
 public:
  explicit XorBlockImpl(unsigned bits) : AlignedBlockImpl(Point{1} << bits, kNoLimit), bits_(bits) {}
  json descriptor() const override { return {{"kind", "xor_block"}, {"bits", bits_}}; }

 private:
  unsigned bits_;
};

class MacrocubeLevelImpl final : public AlignedBlockImpl {
 public:
  MacrocubeLevelImpl(Point kappa, unsigned alpha, Point width, Point limit)
      : AlignedBlockImpl(width, limit), kappa_(kappa), alpha_(alpha) {}
  json descriptor() const override {
    json d{{"kind", "macrocube_level"}, {"kappa", kappa_}, {"alpha", alpha_}};
    if (limit_ != kNoLimit) d["limit"] = limit_;
    return d;
  }

 private:
  Point kappa_;
  unsigned alpha_;
};

class BoundedShiftImpl final : public EntourageImpl {
 public:
  BoundedShiftImpl(Point radius, Point limit) : radius_(radius), limit_(limit) {}
  PointSet fwd(Point x, const Window&) const override {
    Point lo = x > radius_ ? x - radius_ : 0;
    Point hi = (kNoLimit - x <= radius_) ? kNoLimit : x + radius_ + 1;
    hi = std::min(hi, limit_);
    require_ball_size(hi - lo);
    return range_set(lo, hi);
  }
  PointSet bwd(Point x, const Window& w) const override { return fwd(x, w); }
  bool related(Point x, Point y, const Window&) const override {
    return y < limit_ && (x > y ? x - y : y - x) <= radius_;
  }
  json descriptor() const override {
    json d{{"kind", "bounded_shift"}, {"radius", radius_}};
    if (limit_ != kNoLimit) d["limit"] = limit_;
    return d;
  }
  std::optional<Point> displacement() const override { return radius_; }

 private:
  Point radius_;
  Point limit_;
};

class BlockImpl final : public EntourageImpl {
 public:
  explicit BlockImpl(PointSet b) : b_(std::move(b)) {}
  PointSet fwd(Point x, const Window&) const override {
    if (contains(b_, x)) return b_;
    return {x};
  }
  PointSet bwd(Point x, const Window& w) const override { return fwd(x, w); }
  bool related(Point x, Point y, const Window&) const override {
    return x == y || (contains(b_, x) && contains(b_, y));
  }
  json descriptor() const override { return {{"kind", "block"}, {"set", b_}}; }
  std::optional<Point> displacement() const override {
    return b_.empty() ? 0 : b_.back() - b_.front();
  }

 private:
  PointSet b_;
};

class PermGeneratedImpl final : public EntourageImpl {
 public:
  PermGeneratedImpl(std::vector<Permutation> perms, std::optional<json> descriptor)
      : perms_(std::move(perms)), descriptor_(std::move(descriptor)) {}
  PointSet fwd(Point x, const Window&) const override {
    std::vector<Point> out{x};
    for (const auto& g : perms_) out.push_back(g(x));
    return make_set(std::move(out));
  }
  PointSet bwd(Point x, const Window&) const override {
    std::vector<Point> out{x};
    for (const auto& g : perms_) out.push_back(g.inverse(x));
    return make_set(std::move(out));
  }
  bool related(Point x, Point y, const Window&) const override {
    if (x == y) return true;
    return std::any_of(perms_.begin(), perms_.end(), [&](const Permutation& g) { return g(x) == y; });
  }
  json descriptor() const override {
    if (descriptor_) return *descriptor_;
    json p = json::array();
    for (const auto& g : perms_) p.push_back(g.descriptor());
    return {{"kind", "perm_gen"}, {"perms", p}};
  }
  std::optional<Point> displacement() const override {
    std::optional<Point> d = 0;
    for (const auto& g : perms_) {
      if (!d || !g.displacement()) return std::nullopt;
      d = std::max(*d, *g.displacement());
    }
    return d;
  }

 private:
  std::vector<Permutation> perms_;
  std::optional<json> descriptor_;
};

class CompositeImpl final : public EntourageImpl {
 public:
  CompositeImpl(Entourage e, Entourage f) : e_(std::move(e)), f_(std::move(f)) {}
  PointSet fwd(Point x, const Window& w) const override {
    PointSet out;
    for (Point z : e_.fwd(x, w)) out = set_union(out, f_.fwd(z, w));
    return out;
  }
  PointSet bwd(Point y, const Window& w) const override {
    PointSet out;
    for (Point z : f_.bwd(y, w)) out = set_union(out, e_.bwd(z, w));
    return out;
  }
  bool related(Point x, Point y, const Window& w) const override {
    for (Point z : e_.fwd(x, w))
      if (f_.related(z, y, w)) return true;
    return false;
  }
  json descriptor() const override {
    return {{"kind", "composite"}, {"left", e_.descriptor()}, {"right", f_.descriptor()}};
  }
  Growth growth() const override { return worst(e_.growth(), f_.growth()); }
  std::optional<Point> displacement() const override {
    return add_displacement(e_.displacement(), f_.displacement());
  }

 private:
  Entourage e_;
  Entourage f_;
};

class InverseImpl final : public EntourageImpl {
 public:
  explicit InverseImpl(Entourage e) : e_(std::move(e)) {}
  PointSet fwd(Point x, const Window& w) const override { return e_.bwd(x, w); }
  PointSet bwd(Point x, const Window& w) const override { return e_.fwd(x, w); }
  bool related(Point x, Point y, const Window& w) const override {
    return contains(e_.bwd(x, w), y);
  }
  json descriptor() const override { return {{"kind", "inverse"}, {"of", e_.descriptor()}}; }
  Growth growth() const override { return e_.growth(); }
  std::optional<Point> displacement() const override { return e_.displacement(); }

 private:
  Entourage e_;
};

bool is_natural_like(const PointOrder& ord) {
  const auto& k = ord.descriptor().value("kind", "");
  return k == "natural" || k == "colex";
}

class HullImpl final : public EntourageImpl {
 public:
  HullImpl(Entourage e, PointOrder ord) : e_(std::move(e)), ord_(std::move(ord)) {}

  PointSet fwd(Point x, const Window& w) const override {
    auto [lo, hi] = extremes(x, w);
    auto interval = ord_.interval(lo, hi, w);
    if (!interval) throw HaloExhausted(hi, w.halo);
    return *interval;
  }

  // hull^{-1}[y] = {x : min E[x] <= y <= max E[x]}. Any such x has a point
  // p <= y in E[x], so x lies in E^{-1}[{p : p <= y}].
  PointSet bwd(Point y, const Window& w) const override {
    std::vector<Point> candidates;
    auto d = e_.displacement();
    if (d && is_natural_like(ord_)) {
      Point lo = y > *d ? y - *d : 0;
      Point hi = (kNoLimit - y <= *d) ? kNoLimit - 1 : y + *d;
      for (Point x = lo; x <= hi; ++x) candidates.push_back(x);
    } else {
      auto bound = ord_.prefix_bound(y);
      if (!bound || *bound > w.halo) throw HaloExhausted(bound ? *bound : kNoLimit, w.halo);
      for (Point p = 0; p < *bound; ++p)
        if (ord_.compare(p, y) <= 0)
          for (Point x : e_.bwd(p, w)) candidates.push_back(x);
    }
    std::vector<Point> out;
    for (Point x : make_set(std::move(candidates)))
      if (related(x, y, w)) out.push_back(x);
    return out;
  }

  bool related(Point x, Point y, const Window& w) const override {
    auto [lo, hi] = extremes(x, w);
    return ord_.compare(lo, y) <= 0 && ord_.compare(y, hi) <= 0;
  }

  json descriptor() const override {
    return {{"kind", "hull"}, {"of", e_.descriptor()}, {"order", ord_.descriptor()}};
  }
  Growth growth() const override {
    if (e_.growth() == Growth::infinite) return Growth::infinite;
    return displacement() ? Growth::finitary : Growth::unbounded;
  }
  std::optional<Point> displacement() const override {
    if (!is_natural_like(ord_)) return std::nullopt;
    return e_.displacement();
  }

 private:
  std::pair<Point, Point> extremes(Point x, const Window& w) const {
    PointSet b = e_.fwd(x, w);
    return {ord_.min_of(b), ord_.max_of(b)};
  }

  Entourage e_;
  PointOrder ord_;
};

Point isqrt(Point x) {
  auto r = static_cast<Point>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

bool EntourageImpl::related(Point x, Point y, const Window& w) const {
  return contains(fwd(x, w), y);
}

Entourage::Entourage(std::shared_ptr<const EntourageImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw InvalidInput("null entourage");
}

std::string Entourage::kind() const { return descriptor().value("kind", ""); }

Permutation::Permutation(Fn apply, Fn inverse, json descriptor, std::optional<Point> displacement)
    : apply_(std::move(apply)),
      inverse_(std::move(inverse)),
      descriptor_(std::move(descriptor)),
      displacement_(displacement) {}

Permutation identity_permutation() {
  auto id = [](Point x) { return x; };
  return Permutation(id, id, json{{"kind", "identity"}}, 0);
}

Permutation explicit_permutation(std::vector<std::pair<Point, Point>> mapping) {
  std::map<Point, Point> fwd;
  std::map<Point, Point> inv;
  Point disp = 0;
  for (auto [from, to] : mapping) {
    if (!fwd.emplace(from, to).second)
      throw InvalidInput("permutation maps " + std::to_string(from) + " twice");
    if (!inv.emplace(to, from).second)
      throw InvalidInput("permutation hits " + std::to_string(to) + " twice");
    disp = std::max(disp, from > to ? from - to : to - from);
  }
  for (auto [to, _] : inv)
    if (!fwd.count(to))
      throw InvalidInput("permutation support not closed: " + std::to_string(to));
  json m = json::array();
  for (auto [from, to] : fwd) m.push_back({from, to});
  auto apply = [fwd](Point x) {
    auto it = fwd.find(x);
    return it == fwd.end() ? x : it->second;
  };
  auto invert = [inv](Point x) {
    auto it = inv.find(x);
    return it == inv.end() ? x : it->second;
  };
  return Permutation(apply, invert, json{{"kind", "explicit"}, {"map", m}}, disp);
}

Permutation xor_permutation(Point mask) {
  auto f = [mask](Point x) { return x ^ mask; };
  Point disp = 0;
  if (mask != 0) {
    unsigned top = 63 - static_cast<unsigned>(__builtin_clzll(mask));
    disp = top == 63 ? kNoLimit : (Point{1} << (top + 1)) - 1;
  }
  return Permutation(f, f, json{{"kind", "xor"}, {"mask", mask}}, disp);
}

Permutation even_odd_swap() {
  auto f = [](Point x) { return x ^ 1; };
  return Permutation(f, f, json{{"kind", "even_odd_swap"}}, 1);
}

Permutation block_reversal(std::optional<Point> blocks) {
  auto h = [blocks](Point x) -> Point {
    Point n = isqrt(x);
    if (blocks && n > *blocks) return x;
    return 2 * n * n + 2 * n - x;
  };
  json d{{"kind", "reversal"}};
  d["m"] = blocks ? json(*blocks) : json("countable");
  std::optional<Point> disp;
  if (blocks) disp = 2 * *blocks;
  return Permutation(h, h, std::move(d), disp);
}

Entourage diagonal() {
  return Entourage(std::make_shared<ExplicitImpl>(std::span<const std::pair<Point, Point>>{}));
}

Entourage explicit_relation(std::span<const std::pair<Point, Point>> pairs) {
  return Entourage(std::make_shared<ExplicitImpl>(pairs));
}

Entourage xor_block(unsigned bits) {
  if (bits > 62) throw CapExceeded("xor block with more than 62 bits");
  return Entourage(std::make_shared<XorBlockImpl>(bits));
}

Entourage bounded_shift(Point radius, Point limit) {
  return Entourage(std::make_shared<BoundedShiftImpl>(radius, limit));
}

Entourage macrocube_level(Point kappa, unsigned alpha, Point limit) {
  if (kappa < 2) throw InvalidInput("macrocube requires kappa >= 2");
  // Past 64 bits every encoding shares the single block.
  Point width = checked_pow(kappa, alpha + 1).value_or(kNoLimit);
  return Entourage(std::make_shared<MacrocubeLevelImpl>(kappa, alpha, width, limit));
}

Entourage block_entourage(PointSet b) {
  return Entourage(std::make_shared<BlockImpl>(make_set(std::move(b))));
}

Entourage perm_generated(std::vector<Permutation> perms, std::optional<json> descriptor) {
  return Entourage(std::make_shared<PermGeneratedImpl>(std::move(perms), std::move(descriptor)));
}

Entourage compose(const Entourage& e, const Entourage& f) {
  return Entourage(std::make_shared<CompositeImpl>(e, f));
}

Entourage inverse(const Entourage& e) { return Entourage(std::make_shared<InverseImpl>(e)); }

PointSet ball(const Entourage& e, Point x, const Window& w) { return e.fwd(x, w); }

PointSet ball_set(const Entourage& e, const PointSet& a, const Window& w) {
  PointSet out;
  for (Point x : a) out = set_union(out, e.fwd(x, w));
  return out;
}

Verdict is_cellular_entourage(const Entourage& e, const Window& w) {
  json bounds{{"window", w.size}, {"halo", w.halo}};
  try {
    for (Point x = 0; x < w.size; ++x) {
      PointSet fx = e.fwd(x, w);
      if (!contains(fx, x))
        return Verdict::fails({{"kind", "reflexivity"}, {"pair", {x, x}}}).with_bounds(bounds);
      PointSet bx = e.bwd(x, w);
      if (fx != bx) {
        PointSet only_fwd, only_bwd;
        std::set_difference(fx.begin(), fx.end(), bx.begin(), bx.end(), std::back_inserter(only_fwd));
        std::set_difference(bx.begin(), bx.end(), fx.begin(), fx.end(), std::back_inserter(only_bwd));
        // (x, y) in E but (y, x) not, or the reverse; report the least y.
        if (!only_fwd.empty() && (only_bwd.empty() || only_fwd.front() < only_bwd.front()))
          return Verdict::fails({{"kind", "symmetry"}, {"pair", {x, only_fwd.front()}}})
              .with_bounds(bounds);
        return Verdict::fails({{"kind", "symmetry"}, {"pair", {only_bwd.front(), x}}})
            .with_bounds(bounds);
      }
      if (!fx.empty() && fx.back() >= w.halo)
        return Verdict::unknown("ball of " + std::to_string(x) + " leaves the halo")
            .with_bounds(bounds);
      for (Point y : fx) {
        for (Point z : e.fwd(y, w))
          if (!contains(fx, z))
            return Verdict::fails({{"kind", "transitivity"}, {"triple", {x, y, z}}})
                .with_bounds(bounds);
      }
    }
  } catch (const HaloExhausted& h) {
    return Verdict::unknown(h.what()).with_bounds(bounds);
  } catch (const CapExceeded& c) {
    return Verdict::unknown(c.what()).with_bounds(bounds);
  }
  return Verdict::holds(json{{"window", w.size}}).with_bounds(bounds);
}

Verdict is_locally_finite(const Entourage& e, const Window& w) {
  if (e.growth() == Growth::infinite)
    return Verdict::fails({{"kind", "declared_infinite"}, {"descriptor", e.descriptor()}});
  std::size_t largest = 0;
  try {
    for (Point x = 0; x < w.size; ++x)
      largest = std::max({largest, e.fwd(x, w).size(), e.bwd(x, w).size()});
  } catch (const HaloExhausted& h) {
    return Verdict::unknown(h.what());
  }
  return Verdict::holds({{"largest_ball", largest}});
}

std::optional<std::size_t> finitary_bound(const Entourage& e, const Window& w) {
  if (e.growth() != Growth::finitary) return std::nullopt;
  std::size_t largest = 0;
  for (Point x = 0; x < w.size; ++x)
    largest = std::max({largest, e.fwd(x, w).size(), e.bwd(x, w).size()});
  return largest + 1;
}

Entourage interval_hull(const Entourage& e, const PointOrder& ord) {
  return Entourage(std::make_shared<HullImpl>(e, ord));
}

Verdict check_diagonal(const Entourage& e, const Window& w) {
  try {
    for (Point x = 0; x < w.size; ++x)
      if (!contains(e.fwd(x, w), x)) return Verdict::fails({{"pair", {x, x}}});
  } catch (const HaloExhausted& h) {
    return Verdict::unknown(h.what());
  }
  return Verdict::holds();
}

Verdict check_ball_duality(const Entourage& e, const Window& w) {
  try {
    for (Point x = 0; x < w.size; ++x) {
      for (Point y : e.fwd(x, w))
        if (!contains(e.bwd(y, w), x)) return Verdict::fails({{"fwd_pair", {x, y}}});
      for (Point y : e.bwd(x, w))
        if (!contains(e.fwd(y, w), x)) return Verdict::fails({{"bwd_pair", {y, x}}});
    }
  } catch (const HaloExhausted& h) {
    return Verdict::unknown(h.what());
  }
  return Verdict::holds();
}

}  // namespace coarsekit
