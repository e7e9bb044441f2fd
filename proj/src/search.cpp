#include "coarsekit/search.hpp"

#include <map>
#include <mutex>

namespace coarsekit {

std::string_view to_string(SearchResult::Outcome o) {
  switch (o) {
    case SearchResult::Outcome::found:
      return "found";
    case SearchResult::Outcome::none:
      return "none";
    case SearchResult::Outcome::unknown:
      return "unknown";
  }
  return "unknown";
}

json SearchResult::to_json() const {
  json j{{"result", std::string(to_string(result))}, {"table", table},
         {"nodes_explored", nodes_explored}};
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

namespace {

SearchResult unknown_result(std::string reason, std::size_t nodes = 0) {
  SearchResult r;
  r.result = SearchResult::Outcome::unknown;
  r.reason = std::move(reason);
  r.nodes_explored = nodes;
  return r;
}

// Automorphisms of point-transitive abelian examples (x -> d - x) swap any
// two points; only valid when the window is the whole finite ground and the
// family is every pair.
bool symmetry_applies(const CoarseSpace& s, const SubsetFamily& family, const Window& w) {
  if (!s.point_transitive() || !s.ground().is_finite() || w.size != s.ground().size) return false;
  Point n = w.size;
  return family.size() == n * (n - 1) / 2;
}

class SelectorSearch {
 public:
  SelectorSearch(const CoarseSpace& s, const SubsetFamily& family, const Window& w,
                 std::size_t bound, const SelectorSearchOptions& options)
      : s_(s), family_(family), w_(w), bound_(bound), options_(options),
        values_(family.size()), adjacent_(family.size()) {}

  SearchResult run() {
    std::size_t levels = s_.levels(bound_);
    if (levels == 0) return unknown_result("bound 0 tests no base element");
    if (s_.is_chain()) {
      // exp E_top-related members must be sent into E_top in both directions
      top_ = s_.base(levels - 1);
      for (std::size_t k = 0; k < family_.size(); ++k)
        for (std::size_t l = 0; l < k; ++l)
          if (exp_related(*top_, family_.members[k], family_.members[l], w_))
            adjacent_[k].push_back(l);
    }
    bool reduce = symmetry_applies(s_, family_, w_);
    bool done = descend(0, reduce);
    SearchResult r;
    r.nodes_explored = nodes_;
    if (done && found_) {
      r.result = SearchResult::Outcome::found;
      r.selector = *found_;
      r.table = found_->descriptor()["entries"];
      return r;
    }
    if (capped_) return unknown_result("node cap reached", nodes_);
    if (leaf_unknown_) return unknown_result("some selector tables could not be decided", nodes_);
    if (!s_.bound_covers_base(bound_))
      return unknown_result("search exhausted on a countable base", nodes_);
    r.result = SearchResult::Outcome::none;
    if (reduce) r.reason = "point-transitive symmetry reduction on the first pair";
    return r;
  }

 private:
  // True when the search is finished (found or capped).
  bool descend(std::size_t k, bool reduce) {
    if (++nodes_ > options_.node_cap) {
      capped_ = true;
      return true;
    }
    if (k == family_.size()) return leaf();
    const PointSet& a = family_.members[k];
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (reduce && k == 0 && c > 0) break;
      Point v = a[c];
      if (!consistent(k, v)) continue;
      values_[k] = v;
      if (descend(k + 1, reduce)) return true;
    }
    return false;
  }

  bool consistent(std::size_t k, Point v) {
    if (!top_) return true;
    for (std::size_t l : adjacent_[k])
      if (!top_->related(v, values_[l], w_) || !top_->related(values_[l], v, w_)) return false;
    return true;
  }

  bool leaf() {
    std::map<PointSet, Point> entries;
    for (std::size_t k = 0; k < family_.size(); ++k) entries[family_.members[k]] = values_[k];
    SelectorFn sel = table_selector(entries);
    Verdict v = is_selector(sel, s_, family_, w_, bound_);
    if (v.is_holds()) {
      found_ = sel;
      return true;
    }
    if (v.is_unknown()) leaf_unknown_ = true;
    return false;
  }

  const CoarseSpace& s_;
  const SubsetFamily& family_;
  Window w_;
  std::size_t bound_;
  SelectorSearchOptions options_;
  std::vector<Point> values_;
  std::vector<std::vector<std::size_t>> adjacent_;
  std::optional<Entourage> top_;
  std::optional<SelectorFn> found_;
  std::size_t nodes_ = 0;
  bool capped_ = false;
  bool leaf_unknown_ = false;
};

}  // namespace

SearchResult exists_two_selector(const CoarseSpace& s, const SubsetFamily& family,
                                 const Window& window, std::size_t bound,
                                 SelectorSearchOptions options) {
  if (family.size() > options.family_cap)
    throw CapExceeded("family of " + std::to_string(family.size()) + " pairs exceeds search cap " +
                      std::to_string(options.family_cap));
  for (const auto& m : family.members)
    if (m.size() != 2) throw InvalidInput("two-selector search needs a pair family");
  Window w = window.clamped(s.ground());
  try {
    return SelectorSearch(s, family, w, bound, options).run();
  } catch (const HaloExhausted& e) {
    return unknown_result(e.what());
  }
}

PointOrder order_from_chain_base(const Bornology& b, std::size_t levels) {
  std::size_t tested = b.levels(levels);
  struct Memo {
    std::mutex mutex;
    std::map<Point, std::size_t> level;
  };
  auto memo = std::make_shared<Memo>();
  auto level = [b, tested, memo](Point p) {
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->level.find(p); it != memo->level.end()) return it->second;
    }
    auto l = b.level_of(p, tested);
    if (!l) throw InvalidInput("point " + std::to_string(p) + " outside the chain union");
    std::lock_guard lock(memo->mutex);
    memo->level[p] = *l;
    return *l;
  };
  return PointOrder(
      [level](Point x, Point y) {
        if (x == y) return std::strong_ordering::equal;
        auto lx = level(x);
        auto ly = level(y);
        if (lx != ly) return lx <=> ly;
        return x <=> y;
      },
      [level, b](Point y) -> std::optional<Point> {
        PointSet s = b.set(level(y));
        return s.back() + 1;
      },
      {{"kind", "chain_order"}, {"bornology", b.descriptor()}});
}

SearchResult exists_compatible_order(const CoarseSpace& s, const Window& window, std::size_t bound) {
  Window w = window.clamped(s.ground());
  if (w.size > 8) throw CapExceeded("compatible-order search limited to 8 window points");
  if (w.size == 0) throw InvalidInput("empty window");
  if (s.levels(bound) == 0) return unknown_result("bound 0 tests no base element");
  bool whole = s.ground().is_finite() && s.ground().size == w.size;
  CoarseSpace space = whole ? s : subspace(s, Subset::of(range_set(0, w.size)));
  Window sw{w.size, kNoLimit};
  std::vector<Point> perm(w.size);
  for (Point p = 0; p < w.size; ++p) perm[p] = p;
  SearchResult r;
  bool undecided = false;
  do {
    ++r.nodes_explored;
    PointOrder ord = explicit_order(perm);
    Verdict v = is_compatible_order(ord, space, sw, bound);
    if (v.is_holds()) {
      r.result = SearchResult::Outcome::found;
      r.order = ord;
      r.table = perm;
      return r;
    }
    if (v.is_unknown()) undecided = true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (undecided) return unknown_result("some orders could not be decided", r.nodes_explored);
  r.result = SearchResult::Outcome::none;
  return r;
}

}  // namespace coarsekit
