#include "coarsekit/hyperballean.hpp"

#include <map>
#include <mutex>
#include <random>
#include <set>

namespace coarsekit {

std::optional<std::size_t> SubsetFamily::index_of(const PointSet& a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

SubsetFamily explicit_family(std::vector<PointSet> sets, std::string kind) {
  SubsetFamily f;
  for (auto& s : sets) {
    s = make_set(std::move(s));
    if (s.empty()) throw InvalidInput("family member is empty");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.empty()) throw InvalidInput("family is empty");
  f.members = std::move(sets);
  f.kind = std::move(kind);
  f.descriptor = {{"kind", "explicit"}, {"sets", f.members}};
  return f;
}

SubsetFamily all_pairs(Point n) {
  std::vector<PointSet> sets;
  for (Point x = 0; x < n; ++x)
    for (Point y = x + 1; y < n; ++y) sets.push_back({x, y});
  if (sets.empty()) throw InvalidInput("pair family needs at least two points");
  SubsetFamily f = explicit_family(std::move(sets), "pairs");
  f.descriptor = {{"kind", "pairs"}, {"window", n}};
  return f;
}

SubsetFamily all_nonempty_subsets(Point n) {
  if (n == 0 || n > 20) throw CapExceeded("full subset enumeration limited to 1..20 points");
  std::vector<PointSet> sets;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    PointSet s;
    for (Point p = 0; p < n; ++p)
      if (mask >> p & 1) s.push_back(p);
    sets.push_back(std::move(s));
  }
  SubsetFamily f = explicit_family(std::move(sets), "general");
  f.descriptor = {{"kind", "all_subsets"}, {"window", n}};
  return f;
}

SubsetFamily random_subsets(std::size_t count, Point window, std::size_t max_size,
                            std::uint64_t seed) {
  if (window == 0 || max_size == 0) throw InvalidInput("random family needs points");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Point> point(0, window - 1);
  std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(max_size, window));
  std::set<PointSet> seen;
  std::size_t attempts = 0;
  while (seen.size() < count && attempts++ < count * 64) {
    std::vector<Point> s;
    std::size_t k = size(rng);
    while (s.size() < k) s.push_back(point(rng));
    seen.insert(make_set(std::move(s)));
  }
  SubsetFamily f = explicit_family({seen.begin(), seen.end()}, "bounded-sample");
  f.descriptor = {{"kind", "random"}, {"count", count}, {"window", window},
                  {"max_size", max_size}, {"seed", seed}};
  return f;
}

SubsetFamily default_pairs(const CoarseSpace& s, const Window& window, std::size_t bound,
                           std::size_t far_count, std::uint64_t seed) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  if (levels == 0) throw InvalidInput("default pair family needs a tested base element");
  Entourage top = s.base(levels - 1);
  std::vector<PointSet> close;
  std::vector<PointSet> far;
  for (Point x = 0; x < w.size; ++x)
    for (Point y = x + 1; y < w.size; ++y)
      (top.related(x, y, w) || top.related(y, x, w) ? close : far).push_back({x, y});
  std::mt19937_64 rng(seed);
  std::shuffle(far.begin(), far.end(), rng);
  far.resize(std::min(far.size(), far_count));
  close.insert(close.end(), far.begin(), far.end());
  SubsetFamily f = explicit_family(std::move(close), "pairs");
  f.descriptor = {{"kind", "default_pairs"}, {"window", w.size}, {"far", far_count}, {"seed", seed}};
  return f;
}

bool exp_related(const Entourage& e, const PointSet& a, const PointSet& b, const Window& w) {
  auto covered = [&](const PointSet& targets, const PointSet& centers) {
    return std::all_of(targets.begin(), targets.end(), [&](Point t) {
      return std::any_of(centers.begin(), centers.end(),
                         [&](Point c) { return e.related(c, t, w); });
    });
  };
  return covered(a, b) && covered(b, a);
}

namespace {

constexpr std::size_t kCachedBall = 4096;

// exp E is symmetric by definition, so bwd = fwd.
class ExpImpl final : public EntourageImpl {
 public:
  ExpImpl(Entourage e, std::shared_ptr<const SubsetFamily> family, Window inner)
      : e_(std::move(e)), family_(std::move(family)), inner_(inner),
        cache_(family_->size()) {
    for (std::size_t k = 0; k < family_->size(); ++k) {
      by_least_[family_->members[k].front()].push_back(k);
      limit_ = std::max(limit_, family_->members[k].back() + 1);
    }
  }

  PointSet fwd(Point k, const Window&) const override {
    if (k >= family_->size()) throw InvalidInput("family index out of range");
    {
      std::lock_guard lock(mutex_);
      if (cache_[k]) return *cache_[k];
    }
    const PointSet& a = family_->members[k];
    PointSet reach = ball_set(e_, a, inner_);
    std::vector<Point> candidates;
    if (reach.size() < by_least_.size()) {
      for (Point p : reach)
        if (auto it = by_least_.find(p); it != by_least_.end())
          candidates.insert(candidates.end(), it->second.begin(), it->second.end());
      std::sort(candidates.begin(), candidates.end());
    } else {
      for (std::size_t j = 0; j < family_->size(); ++j) candidates.push_back(j);
    }
    PointSet out;
    if (a.size() <= 64) {
      // in_reach[p]: p in E[A]; covers[p]: bit r set when a[r] in E[p].
      std::vector<char> in_reach(limit_, 0);
      std::vector<std::uint64_t> covers(limit_, 0);
      for (Point p : reach)
        if (p < limit_) in_reach[p] = 1;
      for (std::size_t r = 0; r < a.size(); ++r)
        for (Point p : e_.bwd(a[r], inner_))
          if (p < limit_) covers[p] |= std::uint64_t{1} << r;
      std::uint64_t full = a.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a.size()) - 1;
      for (Point j : candidates) {
        std::uint64_t mask = 0;
        bool inside = true;
        for (Point b : family_->members[j]) {
          if (!in_reach[b]) {
            inside = false;
            break;
          }
          mask |= covers[b];
        }
        if (inside && mask == full) out.push_back(j);
      }
    } else {
      for (Point j : candidates)
        if (exp_related(e_, a, family_->members[j], inner_)) out.push_back(j);
    }
    if (out.size() <= kCachedBall) {
      std::lock_guard lock(mutex_);
      cache_[k] = out;
    }
    return out;
  }
  PointSet bwd(Point k, const Window& w) const override { return fwd(k, w); }
  bool related(Point k, Point l, const Window&) const override {
    if (k >= family_->size() || l >= family_->size()) return false;
    return exp_related(e_, family_->members[k], family_->members[l], inner_);
  }
  json descriptor() const override {
    return {{"kind", "exp"}, {"of", e_.descriptor()}, {"family", family_->descriptor}};
  }
  Growth growth() const override { return e_.growth(); }

 private:
  Entourage e_;
  std::shared_ptr<const SubsetFamily> family_;
  Window inner_;
  std::map<Point, std::vector<std::size_t>> by_least_;
  Point limit_ = 0;
  mutable std::mutex mutex_;
  mutable std::vector<std::optional<PointSet>> cache_;
};

}  // namespace

CoarseSpace exp_space(const CoarseSpace& s, const SubsetFamily& family, const Window& w,
                      std::size_t cap) {
  if (family.size() > cap)
    throw CapExceeded("family of " + std::to_string(family.size()) + " members exceeds cap " +
                      std::to_string(cap));
  if (family.size() == 0) throw InvalidInput("empty family");
  Window inner = w.clamped(s.ground());
  for (const auto& m : family.members)
    for (Point p : m)
      if (!s.ground().contains(p)) throw InvalidInput("family member outside ground");
  auto shared = std::make_shared<const SubsetFamily>(family);
  CoarseSpace::Options opts;
  opts.chain = s.is_chain();
  opts.length = s.base_length();
  auto gen = [s, shared, inner](std::size_t i) {
    return Entourage(std::make_shared<ExpImpl>(s.base(i), shared, inner));
  };
  return CoarseSpace(GroundSet::finite(family.size()), gen,
                     {{"kind", "exp"}, {"of", s.descriptor()}, {"family", family.descriptor}}, opts);
}

}  // namespace coarsekit
