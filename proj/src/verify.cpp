#include "coarsekit/verify.hpp"

#include <set>

namespace coarsekit {

namespace {

struct Rejected {
  std::string reason;
};

void expect(bool ok, const std::string& reason) {
  if (!ok) throw Rejected{reason};
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  expect(v.has_value(), std::string("input missing: ") + what);
  return *v;
}

Point pt(const json& j, const char* key) {
  expect(j.is_object() && j.contains(key) && j[key].is_number_unsigned(),
         std::string("counterexample lacks '") + key + "'");
  return j[key].get<Point>();
}

PointSet set_at(const json& j, const char* key) {
  expect(j.is_object() && j.contains(key) && j[key].is_array(),
         std::string("counterexample lacks '") + key + "'");
  return make_set(j[key].get<std::vector<Point>>());
}

// Candidate indices j must all be refuted, and the candidates must exhaust a
// finite declared base.
template <class Each>
void per_j(const json& cex, const CoarseSpace& target, std::size_t first, Each&& each) {
  expect(target.has_finite_base(), "a countable base cannot be exhausted");
  expect(cex.contains("violations") && cex["violations"].is_array(), "no violation list");
  std::set<std::size_t> refuted;
  for (const json& v : cex["violations"]) {
    std::size_t j = pt(v, "j");
    expect(j < *target.base_length(), "violation names a base index beyond the base");
    each(j, v);
    refuted.insert(j);
  }
  for (std::size_t j = first; j < *target.base_length(); ++j)
    expect(refuted.count(j) == 1, "candidate index " + std::to_string(j) + " is not refuted");
}

void not_superset(const CoarseSpace& s, std::size_t i, std::size_t j, const json& v,
                  const Window& w) {
  Point x = pt(v, "x");
  Point xp = pt(v, "xp");
  expect(s.base(i).related(x, xp, w), "pair is not in E_i");
  expect(!s.base(j).related(x, xp, w), "pair is in F_j");
}

void verify_macro(const PointMap& f, const CoarseSpace& s, const CoarseSpace& t, const Window& w,
                  const Window& tw, const json& cex) {
  std::size_t i = pt(cex, "i");
  Entourage e = s.base(i);
  per_j(cex, t, 0, [&](std::size_t j, const json& v) {
    Point x = pt(v, "x"), y = pt(v, "y");
    expect(e.related(x, y, w), "y is not in E_i[x]");
    expect(f(x) == pt(v, "fx") && f(y) == pt(v, "fy"), "recorded images do not match the map");
    expect(!t.base(j).related(f(x), f(y), tw), "images are F_j-related");
  });
}

void verify_criterion(const CoarseSpace& s, const Window& w, const json& cex, bool order_based,
                      const CheckInputs& in) {
  std::size_t i = pt(cex, "i");
  Entourage e = s.base(i);
  int side = -1;
  if (cex.contains("case")) {
    std::string c = cex["case"].get<std::string>();
    side = (c == "x_chosen" || c == "lesser") ? 0 : 1;
  }
  per_j(cex, s, s.is_chain() ? i : 0, [&](std::size_t j, const json& v) {
    if (v.value("kind", "") == "not_superset") {
      expect(!(s.is_chain() && j >= i), "chain base: F_j contains E_i");
      return not_superset(s, i, j, v, w);
    }
    Point x = pt(v, "x"), y = pt(v, "y"), xp = pt(v, "xp");
    Entourage f = s.base(j);
    expect(x != y, "degenerate pair");
    expect(!f.related(x, y, w), "y is in F_j[x]");
    expect(e.related(x, xp, w), "x' is not in E_i[x]");
    if (order_based) {
      const PointOrder& ord = need(in.order, "order");
      int clause = ord.less(x, y) ? 0 : 1;
      expect(side < 0 || clause == side, "clause does not match the recorded case");
      bool ok = clause == 0 ? ord.less(xp, y) : ord.less(y, xp);
      expect(!ok, "x' is on the required side of y");
    } else {
      const SelectorFn& sel = need(in.selector, "selector");
      Point c = sel({std::min(x, y), std::max(x, y)});
      int clause = c == x ? 0 : 1;
      expect(side < 0 || clause == side, "clause does not match the recorded case");
      Point cp = sel({std::min(xp, y), std::max(xp, y)});
      expect(cp != (clause == 0 ? xp : y), "selection on {x', y} is consistent");
    }
  });
}

void verify_selector(const CheckInputs& in, const Window& w, const json& cex) {
  const SelectorFn& sel = need(in.selector, "selector");
  const CoarseSpace& s = need(in.space, "space");
  std::string kind = cex.value("kind", "");
  if (kind == "membership") {
    PointSet a = set_at(cex, "member");
    if (in.family) expect(in.family->index_of(a).has_value(), "set is not a family member");
    Point chosen = sel(a);
    expect(chosen == pt(cex, "selected"), "selector value differs from the record");
    expect(!contains(a, chosen), "selected point lies in the set");
    return;
  }
  expect(kind == "macro_uniform", "unknown selector counterexample kind");
  std::size_t i = pt(cex, "i");
  Entourage e = s.base(i);
  per_j(cex, s, 0, [&](std::size_t j, const json& v) {
    PointSet a = set_at(v, "A"), b = set_at(v, "B");
    if (in.family) {
      expect(in.family->index_of(a).has_value() && in.family->index_of(b).has_value(),
             "sets are not family members");
    }
    expect(exp_related(e, a, b, w), "sets are not exp E_i-related");
    Point fa = sel(a), fb = sel(b);
    expect(fa == pt(v, "fA") && fb == pt(v, "fB"), "selector values differ from the record");
    expect(!s.base(j).related(fa, fb, w), "selections are F_j-related");
  });
}

void verify_connected(const CoarseSpace& s, const Window& w, const json& cex) {
  expect(cex.contains("pair") && cex["pair"].size() == 2, "no pair");
  Point x = cex["pair"][0].get<Point>(), y = cex["pair"][1].get<Point>();
  std::size_t levels = pt(cex, "levels");
  expect(s.bound_covers_base(levels), "levels do not exhaust a finite base");
  for (std::size_t i = 0; i < levels; ++i)
    expect(!s.base(i).related(x, y, w), "E_" + std::to_string(i) + " relates the pair");
}

void verify_bounded(const CoarseSpace& s, const Window& w, const json& cex) {
  PointSet y = set_at(cex, "set");
  expect(!y.empty(), "empty set");
  std::size_t levels = pt(cex, "levels");
  expect(s.bound_covers_base(levels), "levels do not exhaust a finite base");
  for (std::size_t i = 0; i < levels; ++i) {
    Entourage e = s.base(i);
    PointSet centers = e.bwd(y.front(), w);
    for (Point p : y) centers = set_intersection(centers, e.bwd(p, w));
    expect(centers.empty(), "E_" + std::to_string(i) + " has a center for the set");
  }
}

void verify_large(const CoarseSpace& s, const Subset& y, const Window& w, const json& cex) {
  expect(s.has_finite_base(), "a countable base cannot be exhausted");
  expect(cex.contains("uncovered") && cex["uncovered"].is_array(), "no uncovered list");
  std::set<std::size_t> levels;
  for (const json& u : cex["uncovered"]) {
    std::size_t i = pt(u, "level");
    Point p = pt(u, "point");
    for (Point c : s.base(i).bwd(p, w))
      expect(!y.contains(c), "point " + std::to_string(p) + " is covered from " + std::to_string(c));
    levels.insert(i);
  }
  for (std::size_t i = 0; i < *s.base_length(); ++i)
    expect(levels.count(i) == 1, "level " + std::to_string(i) + " is not refuted");
}

void verify_cellular_entourage(const Entourage& e, const Window& w, const json& v) {
  std::string kind = v.value("kind", "");
  if (kind == "reflexivity") {
    Point x = v["pair"][0].get<Point>();
    expect(!e.related(x, x, w), "pair is reflexive");
  } else if (kind == "symmetry") {
    Point x = v["pair"][0].get<Point>(), y = v["pair"][1].get<Point>();
    expect(e.related(x, y, w) != e.related(y, x, w), "pair is symmetric");
  } else if (kind == "transitivity") {
    Point x = v["triple"][0].get<Point>(), y = v["triple"][1].get<Point>(),
          z = v["triple"][2].get<Point>();
    expect(e.related(x, y, w) && e.related(y, z, w) && !e.related(x, z, w),
           "triple is transitive");
  } else {
    expect(false, "unknown cellularity violation");
  }
}

void verify_cellular(const CoarseSpace& s, const Window& w, const json& cex) {
  std::size_t i = pt(cex, "level");
  expect(s.has_finite_base(), "a countable base cannot be exhausted");
  std::set<std::size_t> refuted;
  expect(cex.contains("per_level") && cex["per_level"].is_array(), "no per-level list");
  for (const json& v : cex["per_level"]) {
    std::size_t j = pt(v, "j");
    if (v.value("kind", "") == "not_superset") {
      Point x = v["pair"][0].get<Point>(), y = v["pair"][1].get<Point>();
      expect(s.base(i).related(x, y, w) && !s.base(j).related(x, y, w), "pair is contained");
    } else {
      verify_cellular_entourage(s.base(j), w, v.at("violation"));
    }
    refuted.insert(j);
  }
  for (std::size_t j = 0; j < *s.base_length(); ++j)
    expect(refuted.count(j) == 1, "level " + std::to_string(j) + " is not refuted");
}

}  // namespace

std::optional<std::string> verify_counterexample(const std::string& check, const CheckInputs& in,
                                                 const json& cex) {
  try {
    expect(cex.is_object(), "counterexample is not an object");
    const CoarseSpace& s = need(in.space, "space");
    Window w = in.window.clamped(s.ground());
    if (check == "macro-uniform" || check == "asymorphism") {
      const PointMap& f = need(in.map, "map");
      const CoarseSpace& t = in.codomain ? *in.codomain : s;
      Window tw = Window{in.window.size, in.window.halo}.clamped(t.ground());
      if (check == "macro-uniform") {
        verify_macro(f, s, t, w, Window::unbounded().clamped(t.ground()), cex);
      } else if (cex.value("kind", "") == "not_bijective") {
        if (cex.contains("x")) {
          Point x = pt(cex, "x");
          expect(f.inverse(f(x)) != x, "map round-trips at x");
        } else {
          Point y = pt(cex, "y");
          expect(f(f.inverse(y)) != y, "inverse round-trips at y");
        }
      } else {
        std::string dir = cex.value("direction", "");
        expect(cex.contains("detail"), "no detail");
        if (dir == "forward")
          verify_macro(f, s, t, w, tw, cex["detail"]);
        else if (dir == "inverse")
          verify_macro(f.inverted(), t, s, tw, w, cex["detail"]);
        else
          expect(false, "unknown direction");
      }
    } else if (check == "selector") {
      verify_selector(in, w, cex);
    } else if (check == "prop1") {
      verify_criterion(s, w, cex, false, in);
    } else if (check == "order-compat") {
      verify_criterion(s, w, cex, true, in);
    } else if (check == "interval-bounded") {
      const PointOrder& ord = need(in.order, "order");
      auto [a, b] = need(in.interval, "interval");
      PointSet y = set_at(cex, "set");
      for (Point p : y)
        expect(ord.compare(a, p) <= 0 && ord.compare(p, b) <= 0, "set leaves the interval");
      verify_bounded(s, w, cex);
    } else if (check == "connected") {
      verify_connected(s, w, cex);
    } else if (check == "large") {
      verify_large(s, need(in.subset, "subset"), w, cex);
    } else if (check == "cellular") {
      verify_cellular(s, w, cex);
    } else {
      return "no counterexample verifier for check '" + check + "'";
    }
  } catch (const Rejected& r) {
    return r.reason;
  } catch (const json::exception& e) {
    return std::string("malformed counterexample: ") + e.what();
  } catch (const Error& e) {
    return std::string("re-check could not be evaluated: ") + e.what();
  }
  return std::nullopt;
}

}  // namespace coarsekit
