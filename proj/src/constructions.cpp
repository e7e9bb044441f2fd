#include "coarsekit/constructions.hpp"

#include <map>

#include "coarsekit/parallel.hpp"

namespace coarsekit {

namespace {

CoarseSpace list_space(GroundSet ground, std::vector<Entourage> base, json descriptor,
                       CoarseSpace::Join join) {
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.length = base.size();
  opts.join = std::move(join);
  auto list = std::make_shared<std::vector<Entourage>>(std::move(base));
  return CoarseSpace(ground, [list](std::size_t i) { return list->at(i); }, std::move(descriptor),
                     opts);
}

std::size_t join_max(std::size_t i, std::size_t j) { return std::max(i, j); }

}  // namespace

CoarseSpace macrocube(Point kappa, std::optional<unsigned> gamma) {
  if (kappa < 2) throw InvalidInput("macrocube requires kappa >= 2");
  json desc{{"kind", "macrocube"}, {"kappa", kappa}};
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.join = join_max;
  opts.point_transitive = true;
  GroundSet ground = GroundSet::countable();
  Point limit = kNoLimit;
  if (gamma) {
    if (*gamma == 0) throw InvalidInput("macrocube requires gamma >= 1");
    auto size = checked_pow(kappa, *gamma);
    if (!size) throw CapExceeded("macrocube size overflows 64 bits");
    ground = GroundSet::finite(*size);
    limit = *size;
    opts.length = *gamma;
    desc["gamma"] = *gamma;
  } else {
    desc["gamma"] = "countable";
  }
  return CoarseSpace(
      ground,
      [kappa, limit](std::size_t alpha) {
        return macrocube_level(kappa, static_cast<unsigned>(alpha), limit);
      },
      std::move(desc), opts);
}

PointOrder colex_order(Point kappa) {
  if (kappa < 2) throw InvalidInput("colex order requires kappa >= 2");
  return PointOrder([](Point a, Point b) { return a <=> b; },
                    [](Point y) -> std::optional<Point> { return y + 1; },
                    json{{"kind", "colex"}, {"kappa", kappa}});
}

PointMap swap_digits_map(Point kappa, unsigned a, unsigned b) {
  auto wa = checked_pow(kappa, a);
  auto wb = checked_pow(kappa, b);
  if (!wa || !wb) throw CapExceeded("digit weight overflows");
  auto f = [kappa, wa = *wa, wb = *wb](Point x) {
    Point da = x / wa % kappa;
    Point db = x / wb % kappa;
    return x - da * wa - db * wb + db * wa + da * wb;
  };
  return PointMap(f, f, {{"kind", "swap_digits"}, {"kappa", kappa}, {"a", a}, {"b", b}});
}

GroupDesc xor_group() {
  GroupDesc g;
  g.op = [](Point a, Point b) { return a ^ b; };
  g.inv = [](Point a) { return a; };
  g.identity = 0;
  g.ground = GroundSet::countable();
  g.chain = [](std::size_t n) {
    if (n > 24) throw CapExceeded("xor chain set beyond 2^24 elements");
    return range_set(0, Point{1} << n);
  };
  g.join = join_max;
  g.descriptor = {{"kind", "group_xor"}};
  return g;
}

GroupDesc cyclic_group(Point n, std::optional<std::vector<PointSet>> chain) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  GroupDesc g;
  g.op = [n](Point a, Point b) { return (a + b) % n; };
  g.inv = [n](Point a) { return (n - a % n) % n; };
  g.identity = 0;
  g.ground = GroundSet::finite(n);
  std::vector<PointSet> sets = chain ? *chain : std::vector<PointSet>{range_set(0, n)};
  if (sets.empty()) throw InvalidInput("empty group chain");
  for (auto& s : sets) s = make_set(s);
  g.chain_length = sets.size();
  g.chain = [sets](std::size_t i) { return sets.at(i); };
  g.descriptor = {{"kind", "group_cyclic"}, {"n", n}, {"chain", sets}};
  return g;
}

GroupDesc trivial_group() {
  GroupDesc g = cyclic_group(1);
  g.join = join_max;
  g.descriptor = {{"kind", "group_trivial"}};
  return g;
}

namespace {

class GroupLevelImpl final : public EntourageImpl {
 public:
  GroupLevelImpl(std::shared_ptr<const GroupDesc> g, std::size_t n, PointSet f)
      : g_(std::move(g)), n_(n), f_(std::move(f)) {}
  PointSet fwd(Point x, const Window&) const override {
    std::vector<Point> out;
    for (Point f : f_) out.push_back(g_->op(f, x));
    return make_set(std::move(out));
  }
  PointSet bwd(Point y, const Window&) const override {
    std::vector<Point> out;
    for (Point f : f_) out.push_back(g_->op(g_->inv(f), y));
    return make_set(std::move(out));
  }
  bool related(Point x, Point y, const Window&) const override {
    return contains(f_, g_->op(y, g_->inv(x)));
  }
  json descriptor() const override {
    return {{"kind", "group_level"}, {"group", g_->descriptor}, {"n", n_}};
  }
  std::optional<Point> displacement() const override {
    if (g_->descriptor.value("kind", "") != "group_xor") return std::nullopt;
    return f_.empty() ? 0 : f_.back();
  }

 private:
  std::shared_ptr<const GroupDesc> g_;
  std::size_t n_;
  PointSet f_;
};

}  // namespace

CoarseSpace group_space(const GroupDesc& g) {
  auto shared = std::make_shared<const GroupDesc>(g);
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.length = g.chain_length;
  opts.join = g.join;
  opts.point_transitive = true;
  return CoarseSpace(
      g.ground,
      [shared](std::size_t n) {
        return Entourage(std::make_shared<GroupLevelImpl>(shared, n, shared->chain(n)));
      },
      g.descriptor, opts);
}

Verdict check_group_axioms(const GroupDesc& g, const Window& window, std::size_t bound) {
  Window w = window.clamped(g.ground);
  Point n = std::min<Point>(w.size, 32);
  std::size_t levels = g.chain_length ? std::min(bound, *g.chain_length) : bound;
  json bounds = bounds_json(w, bound, levels);
  try {
    for (Point x = 0; x < n; ++x) {
      if (g.op(g.identity, x) != x || g.op(x, g.identity) != x)
        return Verdict::fails({{"kind", "identity"}, {"x", x}}).with_bounds(bounds);
      if (g.op(x, g.inv(x)) != g.identity || g.op(g.inv(x), x) != g.identity)
        return Verdict::fails({{"kind", "inverse"}, {"x", x}}).with_bounds(bounds);
      for (Point y = 0; y < n; ++y)
        for (Point z = 0; z < n; ++z)
          if (g.op(g.op(x, y), z) != g.op(x, g.op(y, z)))
            return Verdict::fails({{"kind", "associativity"}, {"triple", {x, y, z}}})
                .with_bounds(bounds);
    }
    PointSet prev;
    for (std::size_t i = 0; i < levels; ++i) {
      PointSet f = g.chain(i);
      if (!contains(f, g.identity))
        return Verdict::fails({{"kind", "chain_identity"}, {"level", i}}).with_bounds(bounds);
      for (Point a : f) {
        if (!g.ground.contains(a))
          return Verdict::fails({{"kind", "chain_ground"}, {"level", i}, {"element", a}})
              .with_bounds(bounds);
        if (!contains(f, g.inv(a)))
          return Verdict::fails({{"kind", "chain_symmetry"}, {"level", i}, {"element", a}})
              .with_bounds(bounds);
      }
      if (!is_subset(prev, f))
        return Verdict::fails({{"kind", "chain_monotone"}, {"level", i}}).with_bounds(bounds);
      prev = std::move(f);
    }
  } catch (const Error& e) {
    return Verdict::unknown(e.what()).with_bounds(bounds);
  }
  return Verdict::holds().with_bounds(bounds);
}

Entourage perm_entourage(std::vector<Permutation> perms) {
  return perm_generated(std::move(perms));
}

CoarseSpace perm_gen_space(std::vector<Permutation> perms) {
  Entourage e = perm_entourage(perms);
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.join = [](std::size_t i, std::size_t j) { return i + j + 1; };
  auto gen = [e](std::size_t i) {
    Entourage out = e;
    for (std::size_t k = 0; k < i; ++k) out = compose(out, e);
    return out;
  };
  return CoarseSpace(GroundSet::countable(), gen, e.descriptor(), opts);
}

CoarseSpace bounded_shift_space(Point radius) {
  CoarseSpace::Options opts;
  opts.chain = true;
  opts.join = [](std::size_t i, std::size_t j) { return i + j + 1; };
  return CoarseSpace(
      GroundSet::countable(),
      [radius](std::size_t i) {
        auto r = checked_mul(radius, i + 1);
        if (!r) throw CapExceeded("shift radius overflows");
        return bounded_shift(*r);
      },
      {{"kind", "bounded_shift"}, {"radius", radius}}, opts);
}

CoarseSpace delta_only_space(GroundSet ground) {
  return list_space(ground, {diagonal()}, {{"kind", "delta_only"}}, join_max);
}

Point ReversalGadget::covered() const {
  if (!m) return kNoLimit;
  return (*m + 1) * (*m + 1);
}

ReversalGadget reversal_gadget(std::optional<Point> m) {
  if (m && *m < 1) throw InvalidInput("reversal gadget requires m >= 1");
  if (m && *m > (Point{1} << 31)) throw CapExceeded("reversal gadget block count too large");
  Permutation h = block_reversal(m);
  json desc{{"kind", "reversal"}};
  desc["m"] = m ? json(*m) : json("countable");
  Entourage e = perm_generated({h}, desc);
  return ReversalGadget{m, h, e};
}

CoarseSpace gadget_space(const ReversalGadget& g) {
  return list_space(GroundSet::countable(), {diagonal(), g.e_h}, g.e_h.descriptor(), join_max);
}

json EmbeddingResult::to_json() const {
  return {{"kappa", kappa}, {"gamma", gamma}, {"codes", codes}};
}

EmbeddingResult cellular_embed(const CoarseSpace& s, const Window& window, std::size_t bound,
                               std::optional<Point> kappa) {
  Window w = window.clamped(s.ground());
  if (w.size == 0 || w.size == kNoLimit) throw InvalidInput("embedding needs a finite window");
  if (!s.is_chain()) throw InvalidInput("embedding needs a chain base");
  std::size_t levels = s.levels(bound);
  if (levels == 0) throw InvalidInput("embedding needs at least one tested base element");
  Point n = w.size;

  // cls[a][x]: least window point of x's E_a-class
  std::vector<std::vector<Point>> cls(levels, std::vector<Point>(n, kNoLimit));
  for (std::size_t a = 0; a < levels; ++a) {
    Entourage e = s.base(a);
    Verdict v = is_cellular_entourage(e, w);
    if (!v.is_holds())
      throw InvalidInput("base element " + std::to_string(a) + " is not cellular on the window" +
                         (v.is_unknown() ? " (" + v.reason + ")" : ""));
    for (Point x = 0; x < n; ++x) {
      if (cls[a][x] != kNoLimit) continue;
      PointSet b = e.fwd(x, w);
      for (Point y : b)
        if (y < n) cls[a][y] = x;  // x is the least unassigned member
    }
  }

  std::vector<std::vector<Point>> coord(levels + 1, std::vector<Point>(n));
  Point fanout = 1;
  auto rank_in = [&fanout](std::map<Point, Point>& seen, Point key) {
    auto [it, fresh] = seen.emplace(key, seen.size());
    fanout = std::max(fanout, it->second + 1);
    return it->second;
  };
  {
    std::map<Point, std::map<Point, Point>> members;
    for (Point x = 0; x < n; ++x) coord[0][x] = rank_in(members[cls[0][x]], x);
  }
  for (std::size_t a = 0; a + 1 < levels; ++a) {
    std::map<Point, std::map<Point, Point>> sub;
    for (Point x = 0; x < n; ++x) coord[a + 1][x] = rank_in(sub[cls[a + 1][x]], cls[a][x]);
  }
  std::map<Point, Point> top;
  for (Point x = 0; x < n; ++x) coord[levels][x] = rank_in(top, cls[levels - 1][x]);

  Point k = std::max<Point>(2, fanout);
  if (kappa) {
    if (*kappa < k)
      throw InvalidInput("class fan-out needs kappa >= " + std::to_string(k));
    k = *kappa;
  }
  // A single top class needs no coordinate of its own.
  unsigned gamma = static_cast<unsigned>(top.size() > 1 ? levels + 1 : levels);
  std::vector<Point> codes(n);
  for (Point x = 0; x < n; ++x) {
    Point code = 0;
    Point weight = 1;
    for (unsigned a = 0; a < gamma; ++a) {
      auto term = checked_mul(coord[a][x], weight);
      if (!term || kNoLimit - code < *term) throw CapExceeded("embedding codes overflow 64 bits");
      code += *term;
      if (a + 1 < gamma) {
        auto next = checked_mul(weight, k);
        if (!next) throw CapExceeded("embedding codes overflow 64 bits");
        weight = *next;
      }
    }
    codes[x] = code;
  }

  PointSet sorted = make_set(codes);
  if (sorted.size() != codes.size()) throw Error("embedding is not injective on the window");
  std::vector<Point> position(n);
  for (Point x = 0; x < n; ++x)
    position[x] = std::lower_bound(sorted.begin(), sorted.end(), codes[x]) - sorted.begin();

  CoarseSpace cube = checked_pow(k, gamma) ? macrocube(k, gamma) : macrocube(k, std::nullopt);
  CoarseSpace domain = subspace(s.truncated(levels), Subset::of(range_set(0, n)));
  CoarseSpace image = subspace(cube.truncated(levels), Subset::of(sorted));
  PointMap to_image = table_map(position);
  return EmbeddingResult{k, gamma, codes, domain, image, to_image};
}

PointOrder compatible_wellorder(const CoarseSpace& s, const Window& w, std::size_t bound) {
  EmbeddingResult r = cellular_embed(s, w, bound);
  return pullback_order(r.codes, {{"kind", "pullback"},
                                  {"along", "cellular_embed"},
                                  {"kappa", r.kappa},
                                  {"gamma", r.gamma},
                                  {"keys", r.codes}});
}

json SpreadReport::to_json() const { return {{"spread", spread}, {"witness", witness}}; }

SpreadReport selector_spread(const SelectorFn& sel, const Entourage& e, const Window& w) {
  Point n = w.size;
  if (n == kNoLimit) throw InvalidInput("spread needs a finite window");
  if (n > 4096) throw CapExceeded("spread window above 4096 points");
  auto index = [n](Point x, Point y) { return x * n + y; };  // x < y
  std::vector<Point> chosen(n * n, kNoLimit);
  parallel_for(n, [&](std::size_t x) {
    for (Point y = x + 1; y < n; ++y) chosen[index(x, y)] = sel({x, y});
  });
  // exp E-neighbours of {x, y} among window pairs
  auto neighbours = [&](Point x, Point y) {
    PointSet reach = ball_set(e, {x, y}, w);
    std::vector<std::pair<Point, Point>> out;
    for (std::size_t i = 0; i < reach.size() && reach[i] < n; ++i)
      for (std::size_t j = i + 1; j < reach.size() && reach[j] < n; ++j)
        if (exp_related(e, {x, y}, {reach[i], reach[j]}, w)) out.emplace_back(reach[i], reach[j]);
    return out;
  };
  struct Best {
    Point spread = 0;
    Point a = 0, b = 0, c = 0, d = 0;
    int steps = 0;
  };
  std::vector<Best> per_x(n);
  parallel_for(n, [&](std::size_t x) {
    Best best;
    for (Point y = x + 1; y < n; ++y) {
      Point s = chosen[index(x, y)];
      auto consider = [&](Point c, Point d, int steps) {
        Point t = chosen[index(c, d)];
        Point dist = s > t ? s - t : t - s;
        if (dist > best.spread)
          best = {dist, x, y, c, d, steps};
      };
      auto first = neighbours(x, y);
      for (auto [c, d] : first) consider(c, d, 1);
      for (auto [c, d] : first)
        for (auto [c2, d2] : neighbours(c, d)) consider(c2, d2, 2);
    }
    per_x[x] = best;
  });
  SpreadReport r;
  for (const Best& b : per_x)
    if (b.spread > r.spread) {
      r.spread = b.spread;
      r.witness = {{"A", {b.a, b.b}}, {"C", {b.c, b.d}}, {"steps", b.steps}};
    }
  return r;
}

SpreadReport selector_spread(const SelectorFn& sel, const ReversalGadget& g, const Window& w) {
  return selector_spread(sel, g.e_h, w);
}

Verdict hull_witness_check(const Entourage& e, const Window& w) {
  PointOrder nat = natural_order();
  CoarseSpace s = CoarseSpace::from_list(GroundSet::countable(), {e, interval_hull(e, nat)}, false);
  json bounds{{"window", w.size}, {"halo", w.halo}};
  try {
    if (auto v = compat_violation(nat, s, 0, 1, w))
      return Verdict::fails({{"violation", *v}}).with_bounds(bounds);
  } catch (const Error& err) {
    return Verdict::unknown(err.what()).with_bounds(bounds);
  }
  return Verdict::holds({{"witness", "interval_hull"}}).with_bounds(bounds);
}

}  // namespace coarsekit
