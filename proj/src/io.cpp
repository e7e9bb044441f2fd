#include "coarsekit/io.hpp"

#include <map>

namespace coarsekit {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

std::string kind_of(const json& j, const std::string& path) {
  const json& k = field(j, "kind", path);
  if (!k.is_string()) throw SchemaError(path + ".kind", "expected a string");
  return k.get<std::string>();
}

Point point_of(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(path, "expected a non-negative integer");
  return j.get<Point>();
}

Point point_field(const json& j, const char* key, const std::string& path) {
  return point_of(field(j, key, path), path + "." + key);
}

std::optional<Point> optional_point(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) return std::nullopt;
  return point_field(j, key, path);
}

const json& array_field(const json& j, const char* key, const std::string& path) {
  const json& a = field(j, key, path);
  if (!a.is_array()) throw SchemaError(path + "." + key, "expected an array");
  return a;
}

PointSet set_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(point_of(j[k], path + "[" + std::to_string(k) + "]"));
  return make_set(std::move(out));
}

std::vector<Point> list_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(point_of(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::pair<Point, Point> pair_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a pair [x, y]");
  return {point_of(j[0], path + "[0]"), point_of(j[1], path + "[1]")};
}

// "countable" or a count
std::optional<Point> count_or_countable(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "countable") return std::nullopt;
  return point_of(j, path);
}

template <class Fn>
auto rethrow_as_schema(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

CoarseSpace space_from_generator_or_list(const json& j, const std::string& path);

json ground_to_json(const GroundSet& g) {
  if (g.is_finite()) return {{"kind", "finite"}, {"size", g.size}};
  return {{"kind", "countable"}};
}

GroundSet ground_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "countable") return GroundSet::countable();
  if (kind == "finite") {
    Point n = point_field(j, "size", path);
    if (n == 0) throw SchemaError(path + ".size", "ground must be non-empty");
    return GroundSet::finite(n);
  }
  throw SchemaError(path + ".kind", "unknown ground kind '" + kind + "'");
}

Permutation permutation_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "identity") return identity_permutation();
  if (kind == "xor") return xor_permutation(point_field(j, "mask", path));
  if (kind == "even_odd_swap") return even_odd_swap();
  if (kind == "reversal") return block_reversal(count_or_countable(field(j, "m", path), path + ".m"));
  if (kind == "explicit") {
    const json& m = array_field(j, "map", path);
    std::vector<std::pair<Point, Point>> mapping;
    for (std::size_t k = 0; k < m.size(); ++k)
      mapping.push_back(pair_of(m[k], path + ".map[" + std::to_string(k) + "]"));
    return rethrow_as_schema(path + ".map", [&] { return explicit_permutation(mapping); });
  }
  throw SchemaError(path + ".kind", "unknown permutation kind '" + kind + "'");
}

GroupDesc group_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "group_xor") return xor_group();
  if (kind == "group_trivial") return trivial_group();
  if (kind == "group_cyclic") {
    Point n = point_field(j, "n", path);
    std::optional<std::vector<PointSet>> chain;
    if (j.contains("chain")) {
      const json& c = array_field(j, "chain", path);
      chain.emplace();
      for (std::size_t k = 0; k < c.size(); ++k)
        chain->push_back(set_of(c[k], path + ".chain[" + std::to_string(k) + "]"));
    }
    return rethrow_as_schema(path, [&] { return cyclic_group(n, chain); });
  }
  throw SchemaError(path + ".kind", "unknown group kind '" + kind + "'");
}

Entourage entourage_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "explicit") {
    std::vector<std::pair<Point, Point>> pairs;
    if (j.contains("pairs")) {
      const json& p = array_field(j, "pairs", path);
      for (std::size_t k = 0; k < p.size(); ++k)
        pairs.push_back(pair_of(p[k], path + ".pairs[" + std::to_string(k) + "]"));
    }
    return explicit_relation(pairs);
  }
  if (kind == "diagonal") return diagonal();
  if (kind == "xor_block") {
    Point bits = point_field(j, "bits", path);
    if (bits > 62) throw SchemaError(path + ".bits", "at most 62 bits");
    return xor_block(static_cast<unsigned>(bits));
  }
  if (kind == "bounded_shift")
    return bounded_shift(point_field(j, "radius", path),
                         optional_point(j, "limit", path).value_or(kNoLimit));
  if (kind == "macrocube_level") {
    Point kappa = point_field(j, "kappa", path);
    Point alpha = point_field(j, "alpha", path);
    if (alpha > 63) throw SchemaError(path + ".alpha", "level too large");
    return rethrow_as_schema(path, [&] {
      return macrocube_level(kappa, static_cast<unsigned>(alpha),
                             optional_point(j, "limit", path).value_or(kNoLimit));
    });
  }
  if (kind == "block") return block_entourage(set_of(field(j, "set", path), path + ".set"));
  if (kind == "perm_gen") {
    const json& p = array_field(j, "perms", path);
    std::vector<Permutation> perms;
    for (std::size_t k = 0; k < p.size(); ++k)
      perms.push_back(permutation_from_json(p[k], path + ".perms[" + std::to_string(k) + "]"));
    return perm_entourage(std::move(perms));
  }
  if (kind == "reversal") {
    auto m = count_or_countable(field(j, "m", path), path + ".m");
    return rethrow_as_schema(path, [&] { return reversal_gadget(m).e_h; });
  }
  if (kind == "composite")
    return compose(entourage_from_json(field(j, "left", path), path + ".left"),
                   entourage_from_json(field(j, "right", path), path + ".right"));
  if (kind == "inverse") return inverse(entourage_from_json(field(j, "of", path), path + ".of"));
  if (kind == "hull")
    return interval_hull(entourage_from_json(field(j, "of", path), path + ".of"),
                         order_from_json(field(j, "order", path), path + ".order"));
  if (kind == "group_level") {
    GroupDesc g = group_from_json(field(j, "group", path), path + ".group");
    Point n = point_field(j, "n", path);
    return rethrow_as_schema(path, [&] { return group_space(g).base(n); });
  }
  throw SchemaError(path + ".kind", "unknown entourage kind '" + kind + "'");
}

Bornology bornology_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "initial_segments") return Bornology::initial_segments();
  if (kind == "chain") {
    const json& s = array_field(j, "sets", path);
    std::vector<PointSet> sets;
    for (std::size_t k = 0; k < s.size(); ++k)
      sets.push_back(set_of(s[k], path + ".sets[" + std::to_string(k) + "]"));
    return rethrow_as_schema(path + ".sets", [&] { return Bornology::chain(std::move(sets)); });
  }
  if (kind == "balls_of")
    return bornology_of(space_from_json(field(j, "space", path), path + ".space"));
  throw SchemaError(path + ".kind", "unknown bornology kind '" + kind + "'");
}

Subset subset_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "all") return Subset::all();
  if (kind == "evens") return Subset::evens();
  if (kind == "explicit") return Subset::of(set_of(field(j, "points", path), path + ".points"));
  throw SchemaError(path + ".kind", "unknown subset kind '" + kind + "'");
}

json space_to_json(const CoarseSpace& s) {
  json out{{"schema", kSchema}, {"ground", ground_to_json(s.ground())}, {"chain", s.is_chain()}};
  json desc = s.descriptor();
  if (desc.value("kind", "") == "list") {
    out["base"] = desc["base"];
  } else {
    if (desc.contains("levels")) {
      out["levels"] = desc["levels"];
      desc.erase("levels");
    }
    out["generator"] = desc;
  }
  return out;
}

CoarseSpace space_from_generator(const json& g, std::optional<GroundSet> ground,
                                 const std::string& path) {
  std::string kind = kind_of(g, path);
  auto build = [&]() -> CoarseSpace {
    if (kind == "macrocube") {
      Point kappa = point_field(g, "kappa", path);
      auto gamma = count_or_countable(field(g, "gamma", path), path + ".gamma");
      if (gamma && *gamma > 64) throw SchemaError(path + ".gamma", "gamma too large");
      return macrocube(kappa, gamma ? std::optional<unsigned>(static_cast<unsigned>(*gamma))
                                    : std::nullopt);
    }
    if (kind == "group_xor" || kind == "group_cyclic" || kind == "group_trivial")
      return group_space(group_from_json(g, path));
    if (kind == "bounded_shift") return bounded_shift_space(point_field(g, "radius", path));
    if (kind == "reversal")
      return gadget_space(reversal_gadget(count_or_countable(field(g, "m", path), path + ".m")));
    if (kind == "perm_gen") {
      const json& p = array_field(g, "perms", path);
      std::vector<Permutation> perms;
      for (std::size_t k = 0; k < p.size(); ++k)
        perms.push_back(permutation_from_json(p[k], path + ".perms[" + std::to_string(k) + "]"));
      return perm_gen_space(std::move(perms));
    }
    if (kind == "delta_only") return delta_only_space(ground.value_or(GroundSet::countable()));
    if (kind == "discrete")
      return discrete_from_bornology(
          bornology_from_json(field(g, "bornology", path), path + ".bornology"),
          ground.value_or(GroundSet::countable()));
    if (kind == "subspace")
      return subspace(space_from_generator_or_list(field(g, "of", path), path + ".of"),
                      subset_from_json(field(g, "subset", path), path + ".subset"));
    throw SchemaError(path + ".kind", "unknown generator kind '" + kind + "'");
  };
  CoarseSpace s = rethrow_as_schema(path, build);
  if (ground && !(s.ground() == *ground) && kind != "subspace")
    throw SchemaError(path, "generator ground does not match the declared ground");
  if (g.contains("levels")) {
    Point levels = point_field(g, "levels", path);
    if (levels == 0) throw SchemaError(path + ".levels", "at least one level");
    s = s.truncated(levels);
  }
  return s;
}

CoarseSpace space_from_generator_or_list(const json& j, const std::string& path) {
  if (j.is_object() && j.value("kind", "") == "list") {
    json wrapped = j;
    wrapped.erase("kind");
    if (!wrapped.contains("ground")) throw SchemaError(path + ".ground", "missing field");
    return space_from_json(wrapped, path);
  }
  return space_from_generator(j, std::nullopt, path);
}

CoarseSpace space_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  if (j.contains("schema") && j["schema"] != kSchema)
    throw SchemaError(path + ".schema", "unsupported schema version");
  std::optional<GroundSet> ground;
  if (j.contains("ground")) ground = ground_from_json(j["ground"], path + ".ground");
  bool has_base = j.contains("base");
  bool has_generator = j.contains("generator");
  if (has_base == has_generator)
    throw SchemaError(path, "exactly one of 'base' and 'generator' is required");
  CoarseSpace s = [&] {
    if (has_generator) return space_from_generator(j["generator"], ground, path + ".generator");
    if (!ground) throw SchemaError(path + ".ground", "missing field");
    const json& base = array_field(j, "base", path);
    if (base.empty()) throw SchemaError(path + ".base", "at least one base element");
    std::vector<Entourage> list;
    for (std::size_t k = 0; k < base.size(); ++k)
      list.push_back(entourage_from_json(base[k], path + ".base[" + std::to_string(k) + "]"));
    bool chain = true;
    if (j.contains("chain")) {
      if (!j["chain"].is_boolean()) throw SchemaError(path + ".chain", "expected a boolean");
      chain = j["chain"].get<bool>();
    }
    return CoarseSpace::from_list(*ground, std::move(list), chain);
  }();
  if (j.contains("levels")) {
    Point levels = point_field(j, "levels", path);
    if (levels == 0) throw SchemaError(path + ".levels", "at least one level");
    s = s.truncated(levels);
  }
  return s;
}

PointOrder order_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "natural") return natural_order();
  if (kind == "alternating") return alternating_order();
  if (kind == "colex") return colex_order(j.contains("kappa") ? point_field(j, "kappa", path) : 2);
  if (kind == "explicit")
    return rethrow_as_schema(path + ".perm", [&] {
      return explicit_order(list_of(field(j, "perm", path), path + ".perm"));
    });
  if (kind == "pullback")
    return rethrow_as_schema(path + ".keys", [&] {
      return pullback_order(list_of(field(j, "keys", path), path + ".keys"), j);
    });
  if (kind == "chain_order")
    return order_from_chain_base(bornology_from_json(field(j, "bornology", path), path + ".bornology"));
  throw SchemaError(path + ".kind", "unknown order kind '" + kind + "'");
}

SelectorFn selector_from_json(const json& j, const std::string& path, const CoarseSpace* space) {
  std::string kind = kind_of(j, path);
  if (kind == "min_order") return selector_from_order(order_from_json(field(j, "order", path), path + ".order"));
  if (kind == "max_order")
    return max_selector_from_order(order_from_json(field(j, "order", path), path + ".order"));
  if (kind == "table") {
    const json& e = array_field(j, "entries", path);
    std::map<PointSet, Point> entries;
    for (std::size_t k = 0; k < e.size(); ++k) {
      std::string p = path + ".entries[" + std::to_string(k) + "]";
      if (!e[k].is_array() || e[k].size() != 2) throw SchemaError(p, "expected [set, value]");
      PointSet set = set_of(e[k][0], p + "[0]");
      if (set.empty()) throw SchemaError(p + "[0]", "empty set");
      if (!entries.emplace(set, point_of(e[k][1], p + "[1]")).second)
        throw SchemaError(p, "duplicate set");
    }
    return table_selector(std::move(entries));
  }
  if (kind == "transferred") {
    if (!space) throw SchemaError(path, "transferred selector needs a space");
    SelectorFn inner = selector_from_json(field(j, "inner", path), path + ".inner", space);
    Subset y = subset_from_json(field(j, "subset", path), path + ".subset");
    return transfer_selector(inner, *space, y, point_field(j, "h_index", path));
  }
  throw SchemaError(path + ".kind", "unknown selector kind '" + kind + "'");
}

PointMap map_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  if (kind == "identity") return identity_map();
  if (kind == "constant") return constant_map(point_field(j, "value", path));
  if (kind == "table") return table_map(list_of(field(j, "table", path), path + ".table"));
  if (kind == "swap_digits") {
    Point a = point_field(j, "a", path);
    Point b = point_field(j, "b", path);
    if (a > 63 || b > 63) throw SchemaError(path, "digit index too large");
    return rethrow_as_schema(path, [&] {
      return swap_digits_map(point_field(j, "kappa", path), static_cast<unsigned>(a),
                             static_cast<unsigned>(b));
    });
  }
  if (kind == "inverse") return map_from_json(field(j, "of", path), path + ".of").inverted();
  return permutation_map(permutation_from_json(j, path));
}

SubsetFamily family_from_json(const json& j, const std::string& path) {
  std::string kind = kind_of(j, path);
  return rethrow_as_schema(path, [&]() -> SubsetFamily {
    if (kind == "pairs") return all_pairs(point_field(j, "window", path));
    if (kind == "all_subsets") return all_nonempty_subsets(point_field(j, "window", path));
    if (kind == "random")
      return random_subsets(point_field(j, "count", path), point_field(j, "window", path),
                            point_field(j, "max_size", path), point_field(j, "seed", path));
    if (kind == "explicit") {
      const json& s = array_field(j, "sets", path);
      std::vector<PointSet> sets;
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::string at = path + ".sets[" + std::to_string(k) + "]";
        sets.push_back(set_of(s[k], at));
        if (sets.back().empty()) throw SchemaError(at, "family member is empty");
      }
      return explicit_family(std::move(sets));
    }
    throw SchemaError(path + ".kind", "unknown family kind '" + kind + "'");
  });
}

}  // namespace coarsekit
