#include "support.hpp"

using namespace coarsekit;

TEST_CASE("macrocube balls") {
  CoarseSpace tiny = macrocube(2, 1);
  CHECK(tiny.ground() == GroundSet::finite(2));
  CHECK(tiny.base(0).fwd(0) == set({0, 1}));

  CoarseSpace cube = macrocube(2, 3);
  CHECK(cube.base(1).fwd(6) == set({4, 5, 6, 7}));
  CHECK(cube.base(0).fwd(6) == set({6, 7}));
  CHECK(cube.base(2).fwd(6) == range_set(0, 8));

  CoarseSpace countable = macrocube(2, std::nullopt);
  for (unsigned a = 0; a < 6; ++a)
    for (Point x = 0; x < 128; ++x) CHECK(countable.base(a).fwd(x) == xor_block(a + 1).fwd(x));

  for (Point kappa : {3, 4}) {
    unsigned gamma = 3;
    CoarseSpace c = macrocube(kappa, gamma);
    Point n = kappa * kappa * kappa;
    for (unsigned a = 0; a < gamma; ++a) {
      CHECK(is_cellular_entourage(c.base(a), Window::of(n)).is_holds());
      for (Point x = 0; x < n; ++x)
        CHECK(c.base(a).fwd(x) == oracle::macrocube_ball(x, kappa, a, n, gamma));
    }
  }
  CHECK_THROWS_AS(macrocube(1, 2), InvalidInput);
  CHECK_THROWS_AS(macrocube(2, 0), InvalidInput);
}

TEST_CASE("colex order") {
  PointOrder c2 = colex_order(2);
  for (Point x = 1; x < 64; ++x) CHECK(c2.less(0, x));
  CHECK(c2.less(1, 2));
  for (Point kappa : {2, 3}) {
    PointOrder c = colex_order(kappa);
    for (Point x = 0; x < 256; ++x)
      for (Point y = 0; y < 256; ++y) REQUIRE(c.less(x, y) == oracle::colex_less(x, y, kappa));
  }
}

TEST_CASE("colex is compatible on macrocubes with j = i") {
  for (auto [kappa, gamma] : std::vector<std::pair<Point, unsigned>>{{2, 1}, {2, 2}, {2, 4}, {3, 2}, {3, 3}, {4, 2}}) {
    CoarseSpace c = macrocube(kappa, gamma);
    Point n = *checked_pow(kappa, gamma);
    Verdict v = is_compatible_order(colex_order(kappa), c, Window::of(std::min<Point>(n, 27)), gamma);
    REQUIRE(v.is_holds());
    for (unsigned i = 0; i < gamma; ++i) CHECK(v.witness["map"][std::to_string(i)] == i);
  }
}

TEST_CASE("swap maps") {
  PointMap s = swap_digits_map(3, 0, 2);
  CHECK(s(1) == 9);
  CHECK(s(9) == 1);
  CHECK(s(4) == 4 - 1 + 9);
  for (Point x = 0; x < 81; ++x) CHECK(s(s(x)) == x);
}

TEST_CASE("group spaces") {
  CoarseSpace xs = group_space(xor_group());
  for (std::size_t n = 0; n < 6; ++n)
    for (Point x = 0; x < 64; ++x) {
      PointSet expect;
      for (Point g = 0; g < (Point{1} << n); ++g) expect.push_back(x ^ g);
      CHECK(xs.base(n).fwd(x) == make_set(expect));
    }
  CHECK(check_group_axioms(xor_group(), Window::of(32), 5).is_holds());
  CHECK(check_group_axioms(cyclic_group(6), Window::of(6), 1).is_holds());

  CoarseSpace triv = group_space(trivial_group());
  CHECK(triv.ground() == GroundSet::finite(1));
  CHECK(triv.base(0).fwd(0) == PointSet{0});

  CoarseSpace z6 = group_space(cyclic_group(6));
  CHECK(finite_connected_flag(z6, 1));
  CHECK(z6.base(0).fwd(2) == range_set(0, 6));

  GroupDesc bad = cyclic_group(6, std::vector<PointSet>{{0, 1}});
  Verdict v = check_group_axioms(bad, Window::of(6), 1);
  REQUIRE(v.is_fails());
  CHECK(v.counterexample["kind"] == "chain_symmetry");
}

TEST_CASE("permutation entourages") {
  Entourage id = perm_entourage({identity_permutation()});
  for (Point x = 0; x < 16; ++x) CHECK(id.fwd(x) == PointSet{x});
  Entourage sw = perm_entourage({identity_permutation(), even_odd_swap()});
  for (Point x = 0; x < 16; ++x) CHECK(sw.fwd(x) == set({x & ~Point{1}, x | 1}));

  std::vector<Permutation> perms{even_odd_swap(), xor_permutation(6), block_reversal(5)};
  Entourage e = perm_entourage(perms);
  auto fb = finitary_bound(e, Window::of(64));
  REQUIRE(fb.has_value());
  CHECK(*fb <= perms.size() + 2);
  CHECK(check_ball_duality(e, Window::of(64)).is_holds());

  CoarseSpace s = perm_gen_space({even_odd_swap()});
  CHECK(s.base(0).fwd(4) == set({4, 5}));
  CHECK(s.base(3).fwd(4) == set({4, 5}));
}

TEST_CASE("reversal gadget") {
  ReversalGadget g = reversal_gadget(2);
  CHECK(g.h(0) == 0);
  CHECK(g.h(4) == 8);
  CHECK(g.h(6) == 6);
  CHECK(g.covered() == 9);
  CHECK(reversal_gadget(10).covered() == 121);
  for (Point x = 0; x < 64; ++x) {
    CHECK(g.h(g.h(x)) == x);
    CHECK(g.e_h.fwd(x) == make_set({x, g.h(x)}));
  }
  for (Point n = 0; n <= 2; ++n) {
    Point s = ReversalGadget::block_start(n), len = ReversalGadget::block_length(n);
    CHECK(g.h(s + n) == s + n);  // midpoint fixed
    for (Point k = 0; k < len; ++k) CHECK(g.h(s + k) == s + len - 1 - k);
  }
  CHECK_THROWS_AS(reversal_gadget(0), InvalidInput);

  CoarseSpace sp = gadget_space(g);
  CHECK(sp.base_length() == 2u);
  CHECK(sp.base(1).fwd(5) == set({5, 7}));
}

TEST_CASE("selector spread") {
  SelectorFn mn = selector_from_order(natural_order());
  CHECK(selector_spread(mn, reversal_gadget(1), Window::of(1)).spread == 0);
  for (Point m = 1; m <= 5; ++m) {
    ReversalGadget g = reversal_gadget(m);
    Point n = g.covered();
    SpreadReport r = selector_spread(mn, g, Window::of(n));
    Point expect = oracle::spread(
        n, [m](Point x, Point y) { return y == x || y == oracle::reversal(x, m); },
        [](Point x, Point) { return x; });
    CHECK(r.spread == expect);
    REQUIRE(r.witness.is_object());
    PointSet a = r.witness["A"].get<PointSet>(), c = r.witness["C"].get<PointSet>();
    Point sa = mn(a), sc = mn(c);
    CHECK((sa > sc ? sa - sc : sc - sa) == r.spread);
  }
  SpreadReport max3 = selector_spread(max_selector_from_order(natural_order()), reversal_gadget(3),
                                      Window::of(16));
  CHECK(max3.spread == oracle::spread(
                           16, [](Point x, Point y) { return y == x || y == oracle::reversal(x, 3); },
                           [](Point, Point y) { return y; }));
}

TEST_CASE("hull witness") {
  CHECK(hull_witness_check(diagonal(), Window::of(32)).is_holds());
  CHECK(hull_witness_check(perm_entourage({even_odd_swap()}), Window::of(128)).is_holds());
  CHECK(hull_witness_check(reversal_gadget(std::nullopt).e_h, Window::of(128)).is_holds());
  CHECK(hull_witness_check(reversal_gadget(6).e_h, Window::of(64)).is_holds());
}

TEST_CASE("cellular embeddings") {
  CoarseSpace cube = macrocube(3, 2);
  EmbeddingResult r = cellular_embed(cube, Window::of(9), 2);
  CHECK(r.kappa == 3);
  CHECK(r.gamma == 2);
  CHECK(make_set(r.codes).size() == 9);
  CHECK(is_asymorphism(r.to_image, r.domain, r.image, Window::of(9), 2).is_holds());

  CoarseSpace xb = discrete_from_bornology(Bornology::initial_segments());
  EmbeddingResult d = cellular_embed(xb, Window::of(64), 64);
  CHECK(make_set(d.codes).size() == 64);
  CHECK(is_asymorphism(d.to_image, d.domain, d.image, Window::of(64), 64).is_holds());

  CoarseSpace one = CoarseSpace::from_list(GroundSet::finite(5), {macrocube_level(5, 0)}, true);
  EmbeddingResult o = cellular_embed(one, Window::of(5), 1);
  CHECK(o.gamma == 1);

  CHECK_THROWS_AS(cellular_embed(bounded_shift_space(1), Window::of(8), 2), InvalidInput);
  CHECK_THROWS_WITH_AS(cellular_embed(cube, Window::of(9), 2, Point{2}), doctest::Contains("3"),
                       InvalidInput);
  CHECK(r.to_json()["kappa"] == 3);
}

TEST_CASE("compatible well-orders") {
  CoarseSpace cube = macrocube(2, 3);
  PointOrder pc = compatible_wellorder(cube, Window::of(8), 3);
  PointOrder c = colex_order(2);
  for (Point x = 0; x < 8; ++x)
    for (Point y = 0; y < 8; ++y) CHECK(pc.less(x, y) == c.less(x, y));

  PointOrder px = compatible_wellorder(group_space(xor_group()), Window::of(64), 7);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    Point x = rng() % 64, y = rng() % 64;
    CHECK(px.less(x, y) == (x < y));
  }

  Bornology seg = Bornology::initial_segments();
  PointOrder pd = compatible_wellorder(discrete_from_bornology(seg), Window::of(32), 32);
  for (std::size_t n = 0; n < 31; ++n) {
    PointSet b = seg.set(n);
    for (Point in : b)
      for (Point out = 0; out < 32; ++out)
        if (!contains(b, out)) CHECK(pd.less(in, out));
  }
  CHECK(is_compatible_order(pd, discrete_from_bornology(seg), Window::of(32), 6).is_holds());
}
