#pragma once

// Exhaustive searches on small explicit instances.

#include "coarsekit/constructions.hpp"

namespace coarsekit {

struct SearchResult {
  enum class Outcome { found, none, unknown };

  Outcome result = Outcome::unknown;
  json table;  // selector entries or the ascending order listing
  std::size_t nodes_explored = 0;
  std::string reason;
  std::optional<SelectorFn> selector;
  std::optional<PointOrder> order;

  json to_json() const;
};

std::string_view to_string(SearchResult::Outcome o);

struct SelectorSearchOptions {
  std::size_t family_cap = 66;  // pairs over 12 points
  std::size_t node_cap = 2000000;
};

// Lexicographically least choice table (smaller element tried first) that
// passes is_selector on the pair family.
SearchResult exists_two_selector(const CoarseSpace& s, const SubsetFamily& family, const Window& w,
                                 std::size_t bound, SelectorSearchOptions options = {});

// B_0 in index order, then B_1 \ B_0, and so on. Points outside the union of
// the first `levels` sets are not ordered.
PointOrder order_from_chain_base(const Bornology& b, std::size_t levels = 4096);

// Least listing (lexicographic over permutations of the window) whose order
// passes is_compatible_order on the window subspace. Window at most 8 points.
SearchResult exists_compatible_order(const CoarseSpace& s, const Window& w, std::size_t bound);

}  // namespace coarsekit
