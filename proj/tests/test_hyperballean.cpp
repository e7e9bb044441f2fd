#include "support.hpp"

using namespace coarsekit;

TEST_CASE("exp relatedness") {
  std::vector<std::pair<Point, Point>> pairs{{0, 1}, {1, 0}};
  Entourage e = explicit_relation(pairs);
  CHECK(exp_related(e, {0}, {1}));
  CHECK_FALSE(exp_related(e, {0}, {2}));
  CHECK(exp_related(diagonal(), {3, 5}, {3, 5}));
  CHECK(exp_related(e, {0, 2}, {1, 2}));
  CHECK_FALSE(exp_related(e, {0, 2}, {1}));
}

TEST_CASE("exp relatedness matches brute force") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    Point n = 3 + rng() % 5;
    auto a = oracle::random_relation(rng, n, 0.3);
    Entourage e = to_entourage(a);
    Entourage ee = compose(e, e);
    auto sym = a;
    for (auto [x, y] : a) sym.insert({y, x});
    Entourage es = to_entourage(sym);
    SubsetFamily fam = all_nonempty_subsets(n);
    for (std::size_t i = 0; i < fam.size(); i += 3)
      for (std::size_t j = 0; j < fam.size(); j += 2) {
        const PointSet &p = fam.members[i], &q = fam.members[j];
        CHECK(exp_related(e, p, q) == oracle::exp_related(a, p, q));
        CHECK(exp_related(es, p, q) == exp_related(es, q, p));
        if (exp_related(e, p, q)) CHECK(exp_related(es, p, q));
      }
    // Triangle through a middle set.
    for (std::size_t i = 0; i < fam.size(); i += 5)
      for (std::size_t j = 0; j < fam.size(); j += 3)
        for (std::size_t k = 0; k < fam.size(); k += 4) {
          const auto &p = fam.members[i], &q = fam.members[j], &r = fam.members[k];
          if (exp_related(e, p, q) && exp_related(e, q, r)) CHECK(exp_related(ee, p, r));
        }
  }
}

TEST_CASE("families") {
  SubsetFamily p = all_pairs(4);
  CHECK(p.size() == 6);
  CHECK(p.kind == "pairs");
  CHECK(p.index_of({1, 3}).has_value());
  CHECK_FALSE(p.index_of({1}).has_value());
  CHECK(all_nonempty_subsets(8).size() == 255);
  CHECK_THROWS_AS(all_nonempty_subsets(21), CapExceeded);

  SubsetFamily r1 = random_subsets(50, 32, 4, 9), r2 = random_subsets(50, 32, 4, 9);
  CHECK(r1.members == r2.members);
  CHECK(r1.size() == 50);
  for (const auto& m : r1.members) {
    CHECK(!m.empty());
    CHECK(m.size() <= 4);
    CHECK(m.back() < 32);
  }

  CoarseSpace s = bounded_shift_space(1);
  SubsetFamily d = default_pairs(s, Window::of(16), 2, 10, 5);
  std::size_t far = 0;
  for (const auto& m : d.members) {
    CHECK(m.size() == 2);
    if (!s.base(1).related(m[0], m[1])) ++far;
  }
  CHECK(far == 10);
  CHECK(default_pairs(s, Window::of(16), 2, 10, 5).members == d.members);
}

TEST_CASE("exp spaces") {
  CoarseSpace delta = delta_only_space(GroundSet::finite(4));
  SubsetFamily fam = all_nonempty_subsets(4);
  CoarseSpace e = exp_space(delta, fam, Window::of(4));
  for (Point a = 0; a < fam.size(); ++a) CHECK(e.base(0).fwd(a) == PointSet{a});

  CoarseSpace cube = macrocube(2, 2);
  SubsetFamily pairs = all_pairs(4);
  CoarseSpace ep = exp_space(cube, pairs, Window::of(4));
  Point idx = *pairs.index_of({0, 1});
  PointSet b = ep.base(0).fwd(idx);
  REQUIRE(b.size() == 1);
  CHECK(pairs.members[b[0]] == set({0, 1}));

  // Brute-force comparison of the K_0 ball of every pair.
  auto k0 = materialize(cube.base(0), 4);
  for (Point a = 0; a < pairs.size(); ++a) {
    PointSet expect;
    for (Point c = 0; c < pairs.size(); ++c)
      if (oracle::exp_related(k0, pairs.members[a], pairs.members[c])) expect.push_back(c);
    CHECK(ep.base(0).fwd(a) == expect);
  }
  CHECK(validate_space(ep, Window::of(pairs.size()), 2).is_holds());

  CHECK_THROWS_AS(exp_space(cube, pairs, Window::of(4), 3), CapExceeded);
}
