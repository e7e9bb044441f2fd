#pragma once

// exp E on explicit finite families of non-empty finite subsets.

#include <cstdint>
#include <string>
#include <vector>

#include "coarsekit/space.hpp"

namespace coarsekit {

struct SubsetFamily {
  std::vector<PointSet> members;  // non-empty, deduplicated, canonical order
  std::string kind = "general";   // pairs | bounded-sample | general
  json descriptor;

  std::size_t size() const { return members.size(); }
  // Index of `a`, if it is a member.
  std::optional<std::size_t> index_of(const PointSet& a) const;
};

SubsetFamily explicit_family(std::vector<PointSet> sets, std::string kind = "general");
// All 2-element subsets of [0, n).
SubsetFamily all_pairs(Point n);
// All non-empty subsets of [0, n), n <= 20.
SubsetFamily all_nonempty_subsets(Point n);
// `count` distinct random subsets of [0, window) with 1..max_size points.
SubsetFamily random_subsets(std::size_t count, Point window, std::size_t max_size,
                            std::uint64_t seed);
// All window pairs related by the largest tested base element, plus
// `far_count` seeded random pairs that are not.
SubsetFamily default_pairs(const CoarseSpace& s, const Window& w, std::size_t bound,
                           std::size_t far_count, std::uint64_t seed);

// A ⊆ E[B] and B ⊆ E[A].
bool exp_related(const Entourage& e, const PointSet& a, const PointSet& b,
                 const Window& w = Window::unbounded());

inline constexpr std::size_t kDefaultFamilyCap = 200000;

// Coarse space on the family (points are member indices) with base exp E_i.
CoarseSpace exp_space(const CoarseSpace& s, const SubsetFamily& family, const Window& w,
                      std::size_t cap = kDefaultFamilyCap);

}  // namespace coarsekit
