#include "coarsekit/space.hpp"

#include <map>
#include <mutex>

namespace coarsekit {

struct CoarseSpace::Cache {
  std::mutex mutex;
  std::map<std::size_t, Entourage> items;
};

CoarseSpace::CoarseSpace(GroundSet ground, Generator base, json descriptor, Options options)
    : ground_(ground),
      generator_(std::move(base)),
      descriptor_(std::move(descriptor)),
      options_(std::move(options)),
      cache_(std::make_shared<Cache>()) {
  if (options_.length && *options_.length == 0)
    throw InvalidInput("a coarse space needs at least one base element");
}

CoarseSpace CoarseSpace::from_list(GroundSet ground, std::vector<Entourage> base, bool chain,
                                   json descriptor) {
  if (descriptor.is_null()) {
    json list = json::array();
    for (const auto& e : base) list.push_back(e.descriptor());
    json g = ground.is_finite() ? json{{"kind", "finite"}, {"size", ground.size}}
                                : json{{"kind", "countable"}};
    descriptor = {{"kind", "list"}, {"ground", g}, {"chain", chain}, {"base", list}};
  }
  Options opts;
  opts.chain = chain;
  opts.length = base.size();
  auto list = std::make_shared<std::vector<Entourage>>(std::move(base));
  return CoarseSpace(ground, [list](std::size_t i) { return list->at(i); }, std::move(descriptor),
                     opts);
}

std::optional<std::size_t> CoarseSpace::join(std::size_t i, std::size_t j) const {
  if (!options_.join) return std::nullopt;
  return options_.join(i, j);
}

Entourage CoarseSpace::base(std::size_t i) const {
  if (options_.length && i >= *options_.length)
    throw InvalidInput("base index " + std::to_string(i) + " beyond declared base");
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->items.find(i);
  if (it != cache_->items.end()) return it->second;
  Entourage e = generator_(i);
  cache_->items.emplace(i, e);
  return e;
}

std::size_t CoarseSpace::levels(std::size_t bound) const {
  return options_.length ? std::min(bound, *options_.length) : bound;
}

bool CoarseSpace::bound_covers_base(std::size_t bound) const {
  return options_.length && bound >= *options_.length;
}

CoarseSpace CoarseSpace::truncated(std::size_t levels) const {
  if (levels == 0) throw InvalidInput("truncation to zero levels");
  Options opts = options_;
  opts.length = options_.length ? std::min(levels, *options_.length) : levels;
  json desc = descriptor_;
  if (desc.value("kind", "") == "list") {
    json base = json::array();
    for (std::size_t i = 0; i < *opts.length; ++i) base.push_back(desc["base"][i]);
    desc["base"] = base;
  } else {
    desc["levels"] = *opts.length;
  }
  auto parent = *this;
  CoarseSpace out(ground_, [parent](std::size_t i) { return parent.base(i); }, std::move(desc), opts);
  out.to_parent_ = to_parent_;
  return out;
}

// Subset

Subset Subset::of(PointSet points) {
  Subset s;
  s.finite_ = make_set(std::move(points));
  s.descriptor_ = {{"kind", "explicit"}, {"points", *s.finite_}};
  return s;
}

Subset Subset::all() {
  auto id = [](Point p) { return p; };
  return countable([](Point) { return true; }, id, id, {{"kind", "all"}});
}

Subset Subset::evens() {
  return countable([](Point p) { return p % 2 == 0; }, [](Point k) { return 2 * k; },
                   [](Point p) { return p / 2; }, {{"kind", "evens"}});
}

Subset Subset::countable(std::function<bool(Point)> contains, std::function<Point(Point)> nth,
                         std::function<Point(Point)> rank, json descriptor) {
  Subset s;
  s.contains_ = std::move(contains);
  s.nth_ = std::move(nth);
  s.rank_ = std::move(rank);
  s.descriptor_ = std::move(descriptor);
  return s;
}

bool Subset::contains(Point p) const {
  return finite_ ? coarsekit::contains(*finite_, p) : contains_(p);
}

const PointSet& Subset::points() const {
  if (!finite_) throw InvalidInput("countable subset has no explicit point list");
  return *finite_;
}

Point Subset::nth(Point k) const {
  if (finite_) {
    if (k >= finite_->size()) throw InvalidInput("subset index out of range");
    return (*finite_)[k];
  }
  return nth_(k);
}

Point Subset::rank(Point p) const {
  if (finite_) {
    auto it = std::lower_bound(finite_->begin(), finite_->end(), p);
    if (it == finite_->end() || *it != p) throw InvalidInput("point not in subset");
    return static_cast<Point>(it - finite_->begin());
  }
  return rank_(p);
}

// Bornology

Bornology Bornology::chain(std::vector<PointSet> sets) {
  if (sets.empty()) throw InvalidInput("bornology chain is empty");
  for (auto& s : sets) s = make_set(std::move(s));
  for (std::size_t n = 1; n < sets.size(); ++n)
    if (!is_subset(sets[n - 1], sets[n]))
      throw InvalidInput("bornology chain not increasing at index " + std::to_string(n));
  json desc{{"kind", "chain"}, {"sets", sets}};
  auto shared = std::make_shared<std::vector<PointSet>>(std::move(sets));
  return generated([shared](std::size_t n) { return shared->at(n); }, shared->size(),
                   std::move(desc));
}

Bornology Bornology::initial_segments() {
  return generated([](std::size_t n) { return range_set(0, n + 1); }, std::nullopt,
                   {{"kind", "initial_segments"}});
}

Bornology Bornology::generated(Generator sets, std::optional<std::size_t> length,
                               json descriptor) {
  Bornology b;
  b.sets_ = std::move(sets);
  b.length_ = length;
  b.descriptor_ = std::move(descriptor);
  return b;
}

PointSet Bornology::set(std::size_t n) const {
  if (length_ && n >= *length_) throw InvalidInput("bornology index beyond chain");
  return sets_(n);
}

std::size_t Bornology::levels(std::size_t bound) const {
  return length_ ? std::min(bound, *length_) : bound;
}

std::optional<std::size_t> Bornology::level_of(const PointSet& y, std::size_t bound) const {
  for (std::size_t n = 0; n < levels(bound); ++n)
    if (is_subset(y, set(n))) return n;
  return std::nullopt;
}

std::optional<std::size_t> Bornology::level_of(Point p, std::size_t bound) const {
  return level_of(PointSet{p}, bound);
}

// Checks

namespace {

class RestrictedFiniteImpl final : public EntourageImpl {
 public:
  RestrictedFiniteImpl(Entourage parent, PointSet points, json subset_desc)
      : parent_(std::move(parent)), points_(std::move(points)), subset_desc_(std::move(subset_desc)) {}
  PointSet fwd(Point k, const Window&) const override {
    PointSet out;
    Point x = at(k);
    for (Point j = 0; j < points_.size(); ++j)
      if (parent_.related(x, points_[j])) out.push_back(j);
    return out;
  }
  PointSet bwd(Point k, const Window&) const override {
    PointSet out;
    Point y = at(k);
    for (Point j = 0; j < points_.size(); ++j)
      if (parent_.related(points_[j], y)) out.push_back(j);
    return out;
  }
  bool related(Point k, Point l, const Window&) const override {
    return l < points_.size() && parent_.related(at(k), points_[l]);
  }
  json descriptor() const override {
    return {{"kind", "restricted"}, {"of", parent_.descriptor()}, {"subset", subset_desc_}};
  }
  Growth growth() const override { return parent_.growth(); }

 private:
  Point at(Point k) const {
    if (k >= points_.size()) throw InvalidInput("subspace index out of range");
    return points_[k];
  }
  Entourage parent_;
  PointSet points_;
  json subset_desc_;
};

class RestrictedCountableImpl final : public EntourageImpl {
 public:
  RestrictedCountableImpl(Entourage parent, Subset y) : parent_(std::move(parent)), y_(std::move(y)) {}
  PointSet fwd(Point k, const Window&) const override {
    return filter(parent_.fwd(y_.nth(k)));
  }
  PointSet bwd(Point k, const Window&) const override {
    return filter(parent_.bwd(y_.nth(k)));
  }
  bool related(Point k, Point l, const Window&) const override {
    return parent_.related(y_.nth(k), y_.nth(l));
  }
  json descriptor() const override {
    return {{"kind", "restricted"}, {"of", parent_.descriptor()}, {"subset", y_.descriptor()}};
  }
  Growth growth() const override { return parent_.growth(); }

 private:
  PointSet filter(const PointSet& b) const {
    std::vector<Point> out;
    for (Point p : b)
      if (y_.contains(p)) out.push_back(y_.rank(p));
    return make_set(std::move(out));
  }
  Entourage parent_;
  Subset y_;
};

}  // namespace

Verdict is_connected(const CoarseSpace& s, const Window& window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  json bounds = bounds_json(w, bound, levels);
  if (levels == 0) return Verdict::unknown("bound 0 tests no base element").with_bounds(bounds);
  std::size_t needed = 0;
  try {
    for (Point x = 0; x < w.size; ++x) {
      for (Point y = 0; y < w.size; ++y) {
        if (x == y) continue;
        std::optional<std::size_t> level;
        for (std::size_t i = 0; i < levels && !level; ++i)
          if (s.base(i).related(x, y, w)) level = i;
        if (!level) {
          if (s.bound_covers_base(bound))
            return Verdict::fails({{"pair", {x, y}}, {"levels", levels}}).with_bounds(bounds);
          return Verdict::unknown("bound exhausted: no tested base element relates " +
                                  std::to_string(x) + " to " + std::to_string(y))
              .with_bounds(bounds);
        }
        needed = std::max(needed, *level);
      }
    }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  return Verdict::holds({{"level", needed}}).with_bounds(bounds);
}

Verdict is_bounded(const CoarseSpace& s, const PointSet& y, std::size_t bound,
                   const Window& window) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  json bounds = bounds_json(w, bound, levels);
  if (y.empty()) throw InvalidInput("boundedness of the empty set");
  if (levels == 0) return Verdict::unknown("bound 0 tests no base element").with_bounds(bounds);
  try {
    for (std::size_t i = 0; i < levels; ++i) {
      Entourage e = s.base(i);
      PointSet centers = e.bwd(y.front(), w);
      for (std::size_t k = 1; k < y.size() && !centers.empty(); ++k)
        centers = set_intersection(centers, e.bwd(y[k], w));
      if (!centers.empty())
        return Verdict::holds({{"level", i}, {"center", centers.front()}}).with_bounds(bounds);
    }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  if (s.bound_covers_base(bound))
    return Verdict::fails({{"set", y}, {"levels", levels}}).with_bounds(bounds);
  return Verdict::unknown("bound exhausted").with_bounds(bounds);
}

Bornology bornology_of(const CoarseSpace& s) {
  return Bornology::generated([s](std::size_t n) { return s.base(n).fwd(0); }, s.base_length(),
                              {{"kind", "balls_of"}, {"space", s.descriptor()}, {"basepoint", 0}});
}

CoarseSpace discrete_from_bornology(const Bornology& b, GroundSet ground) {
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.length = b.length();
  opts.join = [](std::size_t i, std::size_t j) { return std::max(i, j); };
  return CoarseSpace(ground, [b](std::size_t n) { return block_entourage(b.set(n)); },
                     {{"kind", "discrete"}, {"bornology", b.descriptor()}}, opts);
}

CoarseSpace subspace(const CoarseSpace& s, const Subset& y) {
  if (y.descriptor().value("kind", "") == "all") return s;
  CoarseSpace::Options opts;
  opts.chain = s.is_chain();
  opts.length = s.base_length();
  if (s.join(0, 0)) opts.join = [s](std::size_t i, std::size_t j) { return *s.join(i, j); };
  json desc{{"kind", "subspace"}, {"of", s.descriptor()}, {"subset", y.descriptor()}};
  if (y.is_finite()) {
    PointSet points = y.points();
    if (points.empty()) throw InvalidInput("empty subspace");
    for (Point p : points)
      if (!s.ground().contains(p)) throw InvalidInput("subspace point outside ground");
    auto gen = [s, points, d = y.descriptor()](std::size_t i) {
      return Entourage(std::make_shared<RestrictedFiniteImpl>(s.base(i), points, d));
    };
    CoarseSpace out(GroundSet::finite(points.size()), gen, std::move(desc), opts);
    out.set_parent_map([s, points](Point k) { return s.to_parent(points.at(k)); });
    return out;
  }
  if (s.ground().is_finite()) throw InvalidInput("countable subset of a finite ground");
  auto gen = [s, y](std::size_t i) {
    return Entourage(std::make_shared<RestrictedCountableImpl>(s.base(i), y));
  };
  CoarseSpace out(GroundSet::countable(), gen, std::move(desc), opts);
  out.set_parent_map([s, y](Point k) { return s.to_parent(y.nth(k)); });
  return out;
}

Verdict is_large(const CoarseSpace& s, const Subset& y, std::size_t bound, const Window& window) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  json bounds = bounds_json(w, bound, levels);
  if (levels == 0) return Verdict::unknown("bound 0 tests no base element").with_bounds(bounds);
  json uncovered = json::array();
  try {
    for (std::size_t i = 0; i < levels; ++i) {
      Entourage e = s.base(i);
      std::optional<Point> miss;
      for (Point p = 0; p < w.size && !miss; ++p) {
        PointSet centers = e.bwd(p, w);
        bool covered = std::any_of(centers.begin(), centers.end(),
                                   [&](Point c) { return c < w.halo && y.contains(c); });
        if (!covered) miss = p;
      }
      if (!miss) return Verdict::holds({{"level", i}}).with_bounds(bounds);
      uncovered.push_back({{"level", i}, {"point", *miss}});
    }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  if (s.bound_covers_base(bound))
    return Verdict::fails({{"uncovered", uncovered}}).with_bounds(bounds);
  return Verdict::unknown("bound exhausted").with_bounds(bounds);
}

namespace {

// Least (x, y) with y in E[x] but not in F[x], over the window.
std::optional<std::pair<Point, Point>> containment_violation(const Entourage& e,
                                                             const Entourage& f,
                                                             const Window& w) {
  for (Point x = 0; x < w.size; ++x)
    for (Point y : e.fwd(x, w))
      if (!f.related(x, y, w)) return std::make_pair(x, y);
  return std::nullopt;
}

}  // namespace

Verdict is_cellular_space(const CoarseSpace& s, const Window& window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  json bounds = bounds_json(w, bound, levels);
  if (levels == 0) return Verdict::unknown("bound 0 tests no base element").with_bounds(bounds);
  try {
    std::vector<Verdict> cellular;
    for (std::size_t i = 0; i < levels; ++i)
      cellular.push_back(is_cellular_entourage(s.base(i), w));
    json cover = json::object();
    for (std::size_t i = 0; i < levels; ++i) {
      if (cellular[i].is_holds()) {
        cover[std::to_string(i)] = i;
        continue;
      }
      bool unknown = cellular[i].is_unknown();
      json per_level = json::array();
      std::optional<std::size_t> found;
      for (std::size_t j = 0; j < levels && !found; ++j) {
        if (j == i) {
          per_level.push_back({{"j", j}, {"kind", "not_cellular"}, {"violation", cellular[i].counterexample}});
          continue;
        }
        auto miss = containment_violation(s.base(i), s.base(j), w);
        if (miss) {
          per_level.push_back({{"j", j}, {"kind", "not_superset"}, {"pair", {miss->first, miss->second}}});
        } else if (cellular[j].is_holds()) {
          found = j;
        } else if (cellular[j].is_unknown()) {
          unknown = true;
        } else {
          per_level.push_back({{"j", j}, {"kind", "not_cellular"}, {"violation", cellular[j].counterexample}});
        }
      }
      if (found) {
        cover[std::to_string(i)] = *found;
        continue;
      }
      if (unknown || !s.bound_covers_base(bound)) {
        std::string why = unknown ? "cellularity undecided on the window" : "bound exhausted";
        return Verdict::unknown(why + " at level " + std::to_string(i)).with_bounds(bounds);
      }
      return Verdict::fails({{"level", i}, {"per_level", per_level}}).with_bounds(bounds);
    }
    return Verdict::holds({{"cellular_cover", cover}}).with_bounds(bounds);
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
}

Verdict validate_space(const CoarseSpace& s, const Window& window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  std::size_t levels = s.levels(bound);
  json bounds = bounds_json(w, bound, levels);
  try {
    for (std::size_t i = 0; i < levels; ++i) {
      Entourage e = s.base(i);
      if (auto v = check_diagonal(e, w); !v.is_holds())
        return v.is_fails() ? Verdict::fails({{"kind", "diagonal"}, {"level", i}, {"detail", v.counterexample}})
                            : v;
      if (auto v = check_ball_duality(e, w); !v.is_holds())
        return v.is_fails() ? Verdict::fails({{"kind", "duality"}, {"level", i}, {"detail", v.counterexample}})
                            : v;
      if (s.is_chain() && i + 1 < levels) {
        if (auto miss = containment_violation(e, s.base(i + 1), w))
          return Verdict::fails({{"kind", "chain"}, {"level", i}, {"pair", {miss->first, miss->second}}})
              .with_bounds(bounds);
      }
    }
    for (std::size_t i = 0; i < levels; ++i)
      for (std::size_t j = 0; j < levels; ++j) {
        auto k = s.join(i, j);
        if (!k || *k >= levels) continue;
        auto composite = compose(s.base(i), s.base(j));
        if (auto miss = containment_violation(composite, s.base(*k), w))
          return Verdict::fails({{"kind", "join"}, {"levels", {i, j, *k}}, {"pair", {miss->first, miss->second}}})
              .with_bounds(bounds);
      }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  return Verdict::holds().with_bounds(bounds);
}

bool finite_connected_flag(const CoarseSpace& s, std::size_t bound) {
  if (!s.ground().is_finite()) return false;
  return is_connected(s, Window::of(s.ground().size), bound).is_holds();
}

}  // namespace coarsekit
