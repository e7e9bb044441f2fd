#pragma once

#include "coarsekit/verify.hpp"
#include "doctest.h"
#include "oracle.hpp"

namespace ck = coarsekit;

// Pairs (x, y) of e with both points below n.
inline oracle::Rel materialize(const ck::Entourage& e, ck::Point n) {
  oracle::Rel r;
  for (ck::Point x = 0; x < n; ++x)
    for (ck::Point y : e.fwd(x))
      if (y < n) r.insert({x, y});
  return r;
}

inline ck::Entourage to_entourage(const oracle::Rel& r) {
  std::vector<std::pair<ck::Point, ck::Point>> pairs(r.begin(), r.end());
  return ck::explicit_relation(pairs);
}

inline ck::PointSet set(std::initializer_list<ck::Point> pts) { return ck::make_set(pts); }
