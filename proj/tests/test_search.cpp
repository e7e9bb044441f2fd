#include <cstdlib>

#include "support.hpp"

using namespace coarsekit;

namespace {

// Lexicographically least passing table, by brute force over all 2^|pairs|
// choice functions.
std::optional<std::vector<Point>> brute_two_selector(const oracle::FinSpace& fs) {
  std::vector<std::pair<Point, Point>> pairs;
  for (Point x = 0; x < fs.n; ++x)
    for (Point y = x + 1; y < fs.n; ++y) pairs.push_back({x, y});
  std::size_t m = pairs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    // Bit k of the lexicographic rank counts from the first pair.
    auto pick = [&](Point x, Point y) {
      std::size_t k = std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) - pairs.begin();
      return (mask >> (m - 1 - k)) & 1 ? y : x;
    };
    if (oracle::two_selector(fs, pick)) {
      std::vector<Point> out;
      for (auto [x, y] : pairs) out.push_back(pick(x, y));
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("two-selector search") {
  CoarseSpace s = bounded_shift_space(1);
  SearchResult r = exists_two_selector(s, explicit_family({{2, 5}}), Window::of(8), 2);
  CHECK(r.result == SearchResult::Outcome::found);
  CHECK(r.table == json::array({json::array({json::array({2, 5}), 2})}));

  CoarseSpace cube = macrocube(2, 2);
  r = exists_two_selector(cube, all_pairs(4), Window::of(4), 2);
  REQUIRE(r.result == SearchResult::Outcome::found);
  SelectorFn colex = selector_from_order(colex_order(2));
  for (const json& row : r.table) {
    PointSet a = row[0].get<PointSet>();
    CHECK(row[1].get<Point>() == colex(a));
  }
  REQUIRE(r.selector.has_value());
  CHECK(is_selector(*r.selector, cube, all_pairs(4), Window::of(4), 2).is_holds());

  // Every choice on the two pairs is refuted by the single base element.
  std::vector<std::pair<Point, Point>> pairs{{0, 2}, {1, 3}, {2, 1}, {3, 0}};
  CoarseSpace adv = CoarseSpace::from_list(GroundSet::finite(4), {explicit_relation(pairs)}, true);
  r = exists_two_selector(adv, explicit_family({{0, 1}, {2, 3}}), Window::of(4), 1);
  CHECK(r.result == SearchResult::Outcome::none);
  CHECK(r.to_json()["result"] == "none");

  r = exists_two_selector(s, all_pairs(4), Window::of(4), 0);
  CHECK(r.result == SearchResult::Outcome::unknown);

  CHECK_THROWS_AS(exists_two_selector(s, all_pairs(13), Window::of(13), 2), CapExceeded);
  SelectorSearchOptions tight;
  tight.node_cap = 3;
  r = exists_two_selector(gadget_space(reversal_gadget(2)), all_pairs(9), Window::of(9), 2, tight);
  CHECK(r.result == SearchResult::Outcome::unknown);
}

TEST_CASE("two-selector search matches brute force") {
  std::mt19937_64 rng(5);
  int found = 0, none = 0;
  for (int t = 0; t < 30; ++t) {
    Point n = 3 + rng() % 2;
    oracle::FinSpace fs{n, {}};
    std::vector<Entourage> base;
    oracle::Rel cur = oracle::diagonal(n);
    for (int k = 0; k < 2; ++k) {
      auto extra = oracle::random_relation(rng, n, 0.25);
      cur.insert(extra.begin(), extra.end());
      fs.base.push_back(cur);
      base.push_back(to_entourage(cur));
    }
    CoarseSpace s = CoarseSpace::from_list(GroundSet::finite(n), base, true);
    SearchResult r = exists_two_selector(s, all_pairs(n), Window::of(n), 2);
    auto expect = brute_two_selector(fs);
    if (expect) {
      ++found;
      REQUIRE(r.result == SearchResult::Outcome::found);
      std::vector<Point> got;
      for (const json& row : r.table) got.push_back(row[1].get<Point>());
      CHECK(got == *expect);
    } else {
      ++none;
      CHECK(r.result == SearchResult::Outcome::none);
    }
  }
  CHECK(found > 0);
  CHECK(none > 0);
}

TEST_CASE("orders from chain bases") {
  PointOrder nat = order_from_chain_base(Bornology::initial_segments());
  for (Point x = 0; x < 64; ++x)
    for (Point y = 0; y < 64; ++y) CHECK(nat.less(x, y) == (x < y));

  Bornology b = Bornology::chain({{5}, {2, 5, 7}, range_set(0, 10)});
  PointOrder o = order_from_chain_base(b);
  std::vector<Point> listing = range_set(0, 10);
  std::sort(listing.begin(), listing.end(), [&](Point x, Point y) { return o.less(x, y); });
  CHECK(std::vector<Point>(listing.begin(), listing.begin() + 4) == std::vector<Point>{5, 2, 7, 0});

  CoarseSpace xb = discrete_from_bornology(b, GroundSet::finite(10));
  CHECK(is_selector(selector_from_order(o), xb, all_pairs(10), Window::of(10), 3).is_holds());
  CHECK_THROWS_AS(order_from_chain_base(Bornology::chain({{1, 2}, {2}})), InvalidInput);
}

TEST_CASE("compatible order search") {
  CoarseSpace two = macrocube(2, 1);
  SearchResult r = exists_compatible_order(two, Window::of(2), 1);
  REQUIRE(r.result == SearchResult::Outcome::found);
  CHECK(r.table == json({0, 1}));

  CoarseSpace cube = macrocube(2, 2);
  r = exists_compatible_order(cube, Window::of(4), 2);
  REQUIRE(r.result == SearchResult::Outcome::found);
  CHECK(is_compatible_order(colex_order(2), cube, Window::of(4), 2).is_holds());

  CHECK(exists_compatible_order(cube, Window::of(4), 0).result == SearchResult::Outcome::unknown);
  CHECK_THROWS_AS(exists_compatible_order(bounded_shift_space(1), Window::of(9), 2), CapExceeded);

  // Found orders give selectors, and the selector search agrees.
  std::vector<CoarseSpace> spaces{macrocube(2, 2), macrocube(3, 1), bounded_shift_space(1),
                                  group_space(cyclic_group(5)), gadget_space(reversal_gadget(1))};
  for (const CoarseSpace& s : spaces) {
    Window w = Window::of(s.ground().is_finite() ? std::min<Point>(s.ground().size, 6) : 6);
    std::size_t bound = s.base_length().value_or(3);
    SearchResult o = exists_compatible_order(s, w, bound);
    if (o.result != SearchResult::Outcome::found) continue;
    CoarseSpace sub = subspace(s, Subset::of(range_set(0, w.size)));
    CHECK(exists_two_selector(sub, all_pairs(w.size), w, bound).result ==
          SearchResult::Outcome::found);
    CHECK(is_selector(selector_from_order(*o.order), sub, all_pairs(w.size), w, bound).is_holds());
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto run = [] {
    json out;
    CoarseSpace gadget = gadget_space(reversal_gadget(2));
    out["search"] = exists_two_selector(gadget, all_pairs(9), Window::of(9), 2).to_json();
    out["order"] = exists_compatible_order(macrocube(2, 3), Window::of(8), 3).to_json();
    out["selector"] = is_selector(max_selector_from_order(natural_order()), gadget_space(reversal_gadget(5)),
                                  all_pairs(36), Window::of(36), 2)
                          .to_json();
    out["spread"] = selector_spread(selector_from_order(natural_order()), reversal_gadget(4),
                                    Window::of(25))
                        .to_json();
    out["prop1"] = prop1_criterion(selector_from_order(alternating_order()),
                                   bounded_shift_space(1).truncated(3), Window::of(24), 3)
                       .to_json();
    return out.dump();
  };
  setenv("COARSEKIT_THREADS", "1", 1);
  std::string one = run();
  setenv("COARSEKIT_THREADS", "4", 1);
  std::string four = run();
  unsetenv("COARSEKIT_THREADS");
  CHECK(one == four);
}
