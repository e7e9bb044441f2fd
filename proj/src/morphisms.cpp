#include "coarsekit/morphisms.hpp"

#include <mutex>

#include "coarsekit/parallel.hpp"

namespace coarsekit {

PointMap::PointMap(Fn apply, std::optional<Fn> inverse, json descriptor)
    : apply_(std::move(apply)), inverse_(std::move(inverse)), descriptor_(std::move(descriptor)) {}

Point PointMap::inverse(Point y) const {
  if (!inverse_) throw InvalidInput("map has no inverse");
  return (*inverse_)(y);
}

PointMap PointMap::inverted() const {
  if (!inverse_) throw InvalidInput("inverse required");
  return PointMap(*inverse_, apply_, {{"kind", "inverse"}, {"of", descriptor_}});
}

PointMap identity_map() {
  auto id = [](Point x) { return x; };
  return PointMap(id, id, {{"kind", "identity"}});
}

PointMap constant_map(Point p) {
  return PointMap([p](Point) { return p; }, std::nullopt, {{"kind", "constant"}, {"value", p}});
}

PointMap table_map(std::vector<Point> table) {
  std::map<Point, Point> back;
  bool injective = true;
  for (Point x = 0; x < table.size(); ++x)
    injective = back.emplace(table[x], x).second && injective;
  auto apply = [table](Point x) {
    if (x >= table.size()) throw InvalidInput("point " + std::to_string(x) + " outside map table");
    return table[x];
  };
  std::optional<PointMap::Fn> inv;
  if (injective)
    inv = [back](Point y) {
      auto it = back.find(y);
      if (it == back.end()) throw InvalidInput("point " + std::to_string(y) + " not in map image");
      return it->second;
    };
  return PointMap(apply, inv, {{"kind", "table"}, {"table", table}});
}

PointMap permutation_map(const Permutation& p) {
  return PointMap([p](Point x) { return p(x); }, [p](Point y) { return p.inverse(y); },
                  p.descriptor());
}

SelectorFn::SelectorFn(Fn select, json descriptor)
    : select_(std::move(select)), descriptor_(std::move(descriptor)) {}

Point SelectorFn::operator()(const PointSet& a) const {
  if (a.empty()) throw InvalidInput("selector applied to the empty set");
  return select_(a);
}

SelectorFn selector_from_order(const PointOrder& ord) {
  return SelectorFn([ord](const PointSet& a) { return ord.min_of(a); },
                    {{"kind", "min_order"}, {"order", ord.descriptor()}});
}

SelectorFn max_selector_from_order(const PointOrder& ord) {
  return SelectorFn([ord](const PointSet& a) { return ord.max_of(a); },
                    {{"kind", "max_order"}, {"order", ord.descriptor()}});
}

SelectorFn table_selector(std::map<PointSet, Point> entries) {
  json rows = json::array();
  for (const auto& [set, value] : entries) rows.push_back(json::array({set, value}));
  auto shared = std::make_shared<const std::map<PointSet, Point>>(std::move(entries));
  return SelectorFn(
      [shared](const PointSet& a) {
        auto it = shared->find(a);
        if (it == shared->end()) throw SelectorUndefined("selector table has no entry for set");
        return it->second;
      },
      {{"kind", "table"}, {"entries", rows}});
}

SelectorFn global_selector_from_wellorder(const PointOrder& ord, const CoarseSpace& s) {
  return SelectorFn([ord](const PointSet& a) { return ord.min_of(a); },
                    {{"kind", "min_order"}, {"order", ord.descriptor()}, {"global", true},
                     {"space", s.descriptor()}});
}

SelectorFn transfer_selector(const SelectorFn& inner, const CoarseSpace& s, const Subset& y,
                             std::size_t h_index, const Window& w) {
  Entourage h = s.base(h_index);
  json desc{{"kind", "transferred"}, {"inner", inner.descriptor()}, {"subset", y.descriptor()},
            {"h_index", h_index}};
  return SelectorFn(
      [inner, h, y, w](const PointSet& a) {
        std::vector<Point> z;
        for (Point p : a) {
          PointSet centers = h.bwd(p, w);
          auto it = std::find_if(centers.begin(), centers.end(),
                                 [&](Point c) { return y.contains(c); });
          if (it == centers.end())
            throw InvalidInput("point " + std::to_string(p) +
                               " is not covered by H[Y]; re-check largeness");
          z.push_back(*it);
        }
        Point chosen = inner(make_set(std::move(z)));
        for (Point p : a)
          if (h.related(chosen, p, w)) return p;
        throw InvalidInput("witness H invalid: no input point in H[z]; re-check largeness");
      },
      std::move(desc));
}

namespace {

using ViolationFn = std::function<std::optional<json>(std::size_t i, std::size_t j, int side)>;

struct LevelSearch {
  std::size_t levels = 0;         // tested indices i
  std::size_t target_levels = 0;  // candidate indices j
  bool covers = false;            // exhausting the candidates proves failure
  bool from_i = false;            // candidates start at j = i
  std::vector<std::string> sides;  // empty: one shared witness
};

// For each tested i, the least candidate j with no violation.
Verdict search_witness(const LevelSearch& ls, const json& bounds, const ViolationFn& violation) {
  if (ls.levels == 0 || ls.target_levels == 0)
    return Verdict::unknown("bound 0 tests no base element").with_bounds(bounds);
  json map = json::object();
  try {
    for (std::size_t i = 0; i < ls.levels; ++i) {
      json entry;
      std::size_t rounds = ls.sides.empty() ? 1 : ls.sides.size();
      for (std::size_t r = 0; r < rounds; ++r) {
        int side = ls.sides.empty() ? -1 : static_cast<int>(r);
        json violations = json::array();
        std::optional<std::size_t> found;
        for (std::size_t j = ls.from_i ? i : 0; j < ls.target_levels && !found; ++j) {
          if (auto v = violation(i, j, side)) {
            (*v)["j"] = j;
            violations.push_back(std::move(*v));
          } else {
            found = j;
          }
        }
        if (!found) {
          json cex{{"i", i}, {"violations", violations}};
          if (side >= 0) cex["case"] = ls.sides[side];
          if (ls.covers) return Verdict::fails(cex).with_bounds(bounds);
          Verdict v = Verdict::unknown("bound exhausted at base index " + std::to_string(i));
          v.counterexample = cex;
          return v.with_bounds(bounds);
        }
        if (side < 0)
          entry = *found;
        else
          entry[ls.sides[side]] = *found;
      }
      map[std::to_string(i)] = entry;
    }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  return Verdict::holds({{"map", map}}).with_bounds(bounds);
}

// First window point x with some x' in E_i[x] outside F_j[x].
std::optional<json> not_superset(const Entourage& e, const Entourage& f, const Window& w) {
  return find_first<json>(w.size, [&](std::size_t x) -> std::optional<json> {
    for (Point xp : e.fwd(x, w))
      if (!f.related(x, xp, w)) return json{{"kind", "not_superset"}, {"x", x}, {"xp", xp}};
    return std::nullopt;
  });
}

Verdict unknown_from(const Error& e, const json& bounds) {
  return Verdict::unknown(e.what()).with_bounds(bounds);
}

}  // namespace

Verdict is_macro_uniform(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                         const Window& w, std::size_t bound) {
  return is_macro_uniform(f, s, t, w, Window::unbounded(), bound);
}

Verdict is_macro_uniform(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                         const Window& window, const Window& target_window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  Window tw = target_window.clamped(t.ground());
  LevelSearch ls;
  ls.levels = s.levels(bound);
  ls.target_levels = t.levels(bound);
  ls.covers = t.bound_covers_base(bound);
  json bounds = bounds_json(w, bound, ls.levels);

  // Images of E_i-balls, computed once per i while they fit the budget and
  // recomputed per x otherwise.
  constexpr std::size_t kImageBudget = std::size_t{1} << 22;
  struct Image {
    Point fx;
    std::vector<std::pair<Point, Point>> ball;  // (y, f(y))
  };
  std::size_t cached_i = SIZE_MAX;
  bool lazy = false;
  std::vector<Image> images;
  auto image_of = [&](Point p) {
    Point q = f(p);
    if (!t.ground().contains(q))
      throw InvalidInput("map sends " + std::to_string(p) + " outside the target ground");
    return q;
  };
  auto image_at = [&](const Entourage& e, Point x) {
    Image im{image_of(x), {}};
    for (Point y : e.fwd(x, w)) im.ball.emplace_back(y, image_of(y));
    return im;
  };
  auto prepare = [&](std::size_t i) {
    if (cached_i == i) return;
    Entourage e = s.base(i);
    images.assign(w.size, {});
    lazy = false;
    std::size_t total = 0;
    for (Point x = 0; x < w.size; ++x) {
      images[x] = image_at(e, x);
      total += images[x].ball.size();
      if (total > kImageBudget) {
        images.clear();
        lazy = true;
        break;
      }
    }
    cached_i = i;
  };
  return search_witness(ls, bounds, [&](std::size_t i, std::size_t j, int) {
    prepare(i);
    Entourage e = s.base(i);
    Entourage g = t.base(j);
    return find_first<json>(w.size, [&](std::size_t x) -> std::optional<json> {
      Image local;
      if (lazy) local = image_at(e, x);
      const Image& im = lazy ? local : images[x];
      for (auto [y, fy] : im.ball)
        if (!g.related(im.fx, fy, tw))
          return json{{"x", x}, {"y", y}, {"fx", im.fx}, {"fy", fy}};
      return std::nullopt;
    });
  });
}

Verdict is_asymorphism(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t,
                       const Window& window, std::size_t bound) {
  if (!f.has_inverse()) throw InvalidInput("inverse required");
  Window w = window.clamped(s.ground());
  Window tw = Window{window.size, window.halo}.clamped(t.ground());
  json bounds = bounds_json(w, bound, s.levels(bound));
  try {
    for (Point x = 0; x < w.size; ++x)
      if (f.inverse(f(x)) != x)
        return Verdict::fails({{"kind", "not_bijective"}, {"x", x}, {"fx", f(x)}}).with_bounds(bounds);
    for (Point y = 0; y < tw.size; ++y)
      if (f(f.inverse(y)) != y)
        return Verdict::fails({{"kind", "not_bijective"}, {"y", y}, {"inverse", f.inverse(y)}})
            .with_bounds(bounds);
  } catch (const Error& e) {
    return unknown_from(e, bounds);
  }
  Verdict forward = is_macro_uniform(f, s, t, w, tw, bound);
  if (forward.is_fails()) {
    forward.counterexample = {{"direction", "forward"}, {"detail", forward.counterexample}};
    return forward;
  }
  Verdict backward = is_macro_uniform(f.inverted(), t, s, tw, w, bound);
  if (backward.is_fails()) {
    backward.counterexample = {{"direction", "inverse"}, {"detail", backward.counterexample}};
    return backward;
  }
  if (forward.is_unknown()) return forward;
  if (backward.is_unknown()) return backward;
  return Verdict::holds({{"forward", forward.witness}, {"inverse", backward.witness}})
      .with_bounds(forward.bound_used);
}

Verdict is_selector(const SelectorFn& sel, const CoarseSpace& s, const SubsetFamily& family,
                    const Window& window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  json bounds = bounds_json(w, bound, s.levels(bound));
  bounds["family_size"] = family.size();
  std::vector<Point> chosen(family.size());
  try {
    for (std::size_t k = 0; k < family.size(); ++k) {
      const PointSet& a = family.members[k];
      chosen[k] = sel(a);
      if (!contains(a, chosen[k]))
        return Verdict::fails({{"kind", "membership"}, {"member", a}, {"selected", chosen[k]}})
            .with_bounds(bounds);
    }
  } catch (const Error& e) {
    return unknown_from(e, bounds);
  }
  CoarseSpace exp = exp_space(s, family, w);
  PointMap g([chosen](Point k) { return chosen.at(k); }, std::nullopt,
             {{"kind", "selector"}, {"selector", sel.descriptor()}});
  Verdict v = is_macro_uniform(g, exp, s, Window{family.size(), kNoLimit}, w, bound);
  v.bound_used = bounds;
  auto translate = [&](json cex) {
    for (auto& item : cex["violations"])
      if (item.contains("x")) {
        item["A"] = family.members[item["x"].get<std::size_t>()];
        item["B"] = family.members[item["y"].get<std::size_t>()];
        item["fA"] = item["fx"];
        item["fB"] = item["fy"];
        for (const char* key : {"x", "y", "fx", "fy"}) item.erase(key);
      }
    cex["kind"] = "macro_uniform";
    return cex;
  };
  if (v.is_fails() || (v.is_unknown() && v.counterexample.is_object()))
    v.counterexample = translate(v.counterexample);
  return v;
}

std::optional<json> prop1_violation(const SelectorFn& sel, const CoarseSpace& s, std::size_t i,
                                    std::size_t j, const Window& window, int side) {
  Window w = window.clamped(s.ground());
  Entourage e = s.base(i);
  Entourage f = s.base(j);
  if (!(s.is_chain() && j >= i))
    if (auto v = not_superset(e, f, w)) return v;
  return find_first<json>(w.size, [&](std::size_t xi) -> std::optional<json> {
    Point x = xi;
    PointSet ex = e.fwd(x, w);
    for (Point y = 0; y < w.size; ++y) {
      if (y == x || f.related(x, y, w)) continue;
      Point c = sel({std::min(x, y), std::max(x, y)});
      int clause = c == x ? 0 : 1;
      if (side >= 0 && clause != side) continue;
      for (Point xp : ex) {
        if (xp == x) continue;
        Point cp = sel({std::min(xp, y), std::max(xp, y)});
        Point want = clause == 0 ? xp : y;
        if (cp != want)
          return json{{"x", x}, {"y", y}, {"xp", xp}, {"chosen", c}, {"chosen_p", cp}};
      }
    }
    return std::nullopt;
  });
}

std::optional<json> compat_violation(const PointOrder& ord, const CoarseSpace& s, std::size_t i,
                                     std::size_t j, const Window& window, int side) {
  Window w = window.clamped(s.ground());
  Entourage e = s.base(i);
  Entourage f = s.base(j);
  if (!(s.is_chain() && j >= i))
    if (auto v = not_superset(e, f, w)) return v;
  return find_first<json>(w.size, [&](std::size_t xi) -> std::optional<json> {
    Point x = xi;
    PointSet ex = e.fwd(x, w);
    for (Point y = 0; y < w.size; ++y) {
      if (y == x || f.related(x, y, w)) continue;
      int clause = ord.less(x, y) ? 0 : 1;
      if (side >= 0 && clause != side) continue;
      for (Point xp : ex) {
        bool ok = clause == 0 ? ord.less(xp, y) : ord.less(y, xp);
        if (!ok) return json{{"x", x}, {"y", y}, {"xp", xp}};
      }
    }
    return std::nullopt;
  });
}

Verdict prop1_criterion(const SelectorFn& sel, const CoarseSpace& s, const Window& window,
                        std::size_t bound, WitnessMode mode) {
  Window w = window.clamped(s.ground());
  LevelSearch ls;
  ls.levels = ls.target_levels = s.levels(bound);
  ls.covers = s.bound_covers_base(bound);
  ls.from_i = s.is_chain();
  if (mode == WitnessMode::per_case) ls.sides = {"x_chosen", "y_chosen"};
  return search_witness(ls, bounds_json(w, bound, ls.levels),
                        [&](std::size_t i, std::size_t j, int side) {
                          return prop1_violation(sel, s, i, j, w, side);
                        });
}

Verdict is_compatible_order(const PointOrder& ord, const CoarseSpace& s, const Window& window,
                            std::size_t bound, WitnessMode mode) {
  Window w = window.clamped(s.ground());
  LevelSearch ls;
  ls.levels = ls.target_levels = s.levels(bound);
  ls.covers = s.bound_covers_base(bound);
  ls.from_i = s.is_chain();
  if (mode == WitnessMode::per_case) ls.sides = {"lesser", "greater"};
  return search_witness(ls, bounds_json(w, bound, ls.levels),
                        [&](std::size_t i, std::size_t j, int side) {
                          return compat_violation(ord, s, i, j, w, side);
                        });
}

json CrosscheckReport::to_json() const {
  static const char* names[] = {"agree", "unknown", "split"};
  return {{"selector", selector.to_json()},
          {"criterion", criterion.to_json()},
          {"agreement", names[static_cast<int>(agreement)]}};
}

CrosscheckReport crosscheck_prop1(const SelectorFn& sel, const CoarseSpace& s, const Window& window,
                                  std::size_t bound) {
  Window w = window.clamped(s.ground());
  CrosscheckReport r;
  if (w.size < 2) {
    r.selector = bound == 0 ? Verdict::unknown("bound 0 tests no base element")
                            : Verdict::holds({{"vacuous", true}});
    r.selector.with_bounds(bounds_json(w, bound, s.levels(bound)));
  } else {
    r.selector = is_selector(sel, s, all_pairs(w.size), w, bound);
  }
  r.criterion = prop1_criterion(sel, s, w, bound);
  if (r.selector.is_unknown() || r.criterion.is_unknown())
    r.agreement = CrosscheckReport::Agreement::unknown;
  else if (r.selector.status == r.criterion.status)
    r.agreement = CrosscheckReport::Agreement::agree;
  else
    r.agreement = CrosscheckReport::Agreement::split;
  return r;
}

Verdict interval_bounded(const PointOrder& ord, const CoarseSpace& s, Point a, Point b,
                         std::size_t bound, const Window& window) {
  Window w = window.clamped(s.ground());
  if (ord.less(b, a)) throw InvalidInput("interval endpoints out of order");
  std::optional<PointSet> interval = ord.interval(a, b, w);
  if (!interval && s.ground().is_finite()) {
    PointSet all;
    for (Point p = 0; p < s.ground().size; ++p)
      if (ord.compare(a, p) <= 0 && ord.compare(p, b) <= 0) all.push_back(p);
    interval = all;
  }
  if (!interval)
    return Verdict::unknown("interval [" + std::to_string(a) + ", " + std::to_string(b) +
                            "] cannot be enumerated within the halo")
        .with_bounds(bounds_json(w, bound, s.levels(bound)));
  Verdict v = is_bounded(s, *interval, bound, w);
  if (v.is_holds()) v.witness["interval_size"] = interval->size();
  return v;
}

json DescentReport::to_json() const {
  return {{"space", on_space.to_json()}, {"discrete", on_discrete.to_json()},
          {"consistent", consistent}};
}

DescentReport descend_to_discrete(const SelectorFn& sel, const CoarseSpace& s, const Window& window,
                                  std::size_t bound) {
  Window w = window.clamped(s.ground());
  DescentReport r;
  CoarseSpace xb = discrete_from_bornology(bornology_of(s), s.ground());
  if (w.size < 2) {
    Verdict v = bound == 0 ? Verdict::unknown("bound 0 tests no base element")
                           : Verdict::holds({{"vacuous", true}});
    r.on_space = r.on_discrete = v;
  } else {
    SubsetFamily pairs = all_pairs(w.size);
    r.on_space = is_selector(sel, s, pairs, w, bound);
    r.on_discrete = is_selector(sel, xb, pairs, w, bound);
  }
  r.consistent = !(r.on_space.is_holds() && r.on_discrete.is_fails());
  return r;
}

}  // namespace coarsekit
