#include "coarsekit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coarsekit/verify.hpp"

namespace coarsekit::cli {

namespace {

struct Usage {
  std::string message;
};

struct MalformedJson {
  std::string source;
  std::string message;
  std::size_t position;
};

struct Options {
  std::string what;
  std::string space;
  std::string codomain;
  std::string map;
  std::string order;
  std::string selector;
  std::string family;
  std::string subset;
  std::string interval;
  std::string verify;
  std::string bornology;
  std::optional<Point> window;
  std::optional<Point> halo;
  std::optional<std::size_t> bound;
  bool per_case = false;
  std::size_t node_cap = 2000000;
  // gen
  std::optional<Point> kappa;
  std::string gamma;
  std::string m;
  std::optional<Point> radius;
  std::optional<Point> size;
  std::optional<std::size_t> levels;
};

struct Call {
  std::string name;
  std::vector<std::string> args;
};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// name or name(a, b, ...)
std::optional<Call> parse_call(const std::string& text) {
  std::string s = trim(text);
  if (s.empty() || s.front() == '{' || s.front() == '[') return std::nullopt;
  auto open = s.find('(');
  if (open == std::string::npos) {
    if (s.find_first_of("/.") != std::string::npos) return std::nullopt;
    return Call{s, {}};
  }
  if (s.back() != ')') return std::nullopt;
  Call c{s.substr(0, open), {}};
  std::stringstream inner(s.substr(open + 1, s.size() - open - 2));
  std::string part;
  while (std::getline(inner, part, ',')) c.args.push_back(trim(part));
  return c;
}

Point to_point(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Usage{what + ": expected a non-negative integer, got '" + s + "'"};
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Usage{what + ": integer out of range"};
  }
}

std::optional<Point> count_or_countable(const std::string& s, const std::string& what) {
  if (s == "countable") return std::nullopt;
  return to_point(s, what);
}

void arity(const Call& c, std::size_t n) {
  if (c.args.size() != n)
    throw Usage{"'" + c.name + "' takes " + std::to_string(n) + " argument(s)"};
}

// Inline JSON (starting with '{' or '[') or a path to a JSON file.
json load_json(const std::string& spec) {
  std::string text;
  std::string source = spec;
  std::string s = trim(spec);
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
    text = s;
    source = "<inline>";
  } else {
    std::ifstream in(spec);
    if (!in) throw Usage{"cannot read '" + spec + "'"};
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedJson{source, e.what(), e.byte};
  }
}

CoarseSpace resolve_space(const std::string& spec, const std::string& flag) {
  if (spec.empty()) throw Usage{flag + " is required"};
  if (auto c = parse_call(spec)) {
    if (c->name == "macrocube") {
      arity(*c, 2);
      auto gamma = count_or_countable(c->args[1], "gamma");
      if (gamma && *gamma > 64) throw Usage{"gamma too large"};
      return macrocube(to_point(c->args[0], "kappa"),
                       gamma ? std::optional<unsigned>(static_cast<unsigned>(*gamma)) : std::nullopt);
    }
    if (c->name == "group-xor") return group_space(xor_group());
    if (c->name == "bounded-shift") {
      arity(*c, 1);
      return bounded_shift_space(to_point(c->args[0], "radius"));
    }
    if (c->name == "reversal") {
      arity(*c, 1);
      return gadget_space(reversal_gadget(count_or_countable(c->args[0], "m")));
    }
    if (c->name == "delta-only") {
      if (c->args.empty()) return delta_only_space();
      arity(*c, 1);
      return delta_only_space(GroundSet::finite(to_point(c->args[0], "size")));
    }
    if (c->name == "discrete-initial") return discrete_from_bornology(Bornology::initial_segments());
    throw Usage{"unknown space shorthand '" + c->name + "'"};
  }
  json j = load_json(spec);
  if (j.is_object() && !j.contains("base") && !j.contains("generator") && j.contains("kind"))
    return space_from_generator(j, std::nullopt, "$");
  return space_from_json(j, "$");
}

PointOrder resolve_order(const std::string& spec) {
  if (spec.empty()) throw Usage{"--order is required"};
  if (auto c = parse_call(spec)) {
    if (c->name == "natural") return natural_order();
    if (c->name == "alternating") return alternating_order();
    if (c->name == "colex") {
      if (c->args.empty()) return colex_order(2);
      arity(*c, 1);
      return colex_order(to_point(c->args[0], "kappa"));
    }
    throw Usage{"unknown order shorthand '" + c->name + "'"};
  }
  return order_from_json(load_json(spec), "$");
}

SelectorFn resolve_selector(const std::string& spec, const CoarseSpace* space) {
  if (spec.empty()) throw Usage{"--selector is required"};
  std::string s = trim(spec);
  if (s.rfind("min:", 0) == 0) return selector_from_order(resolve_order(s.substr(4)));
  if (s.rfind("max:", 0) == 0) return max_selector_from_order(resolve_order(s.substr(4)));
  if (parse_call(s)) throw Usage{"unknown selector shorthand '" + s + "'"};
  return selector_from_json(load_json(spec), "$", space);
}

PointMap resolve_map(const std::string& spec) {
  if (spec.empty()) throw Usage{"--map is required"};
  if (auto c = parse_call(spec)) {
    if (c->name == "identity") return identity_map();
    if (c->name == "even-odd-swap") return permutation_map(even_odd_swap());
    if (c->name == "constant") {
      arity(*c, 1);
      return constant_map(to_point(c->args[0], "value"));
    }
    if (c->name == "xor") {
      arity(*c, 1);
      return permutation_map(xor_permutation(to_point(c->args[0], "mask")));
    }
    if (c->name == "reversal") {
      arity(*c, 1);
      return permutation_map(block_reversal(count_or_countable(c->args[0], "m")));
    }
    if (c->name == "swap") {
      arity(*c, 3);
      Point a = to_point(c->args[1], "a"), b = to_point(c->args[2], "b");
      if (a > 63 || b > 63) throw Usage{"digit index too large"};
      return swap_digits_map(to_point(c->args[0], "kappa"), static_cast<unsigned>(a),
                             static_cast<unsigned>(b));
    }
    throw Usage{"unknown map shorthand '" + c->name + "'"};
  }
  return map_from_json(load_json(spec), "$");
}

std::uint64_t env_seed() {
  const char* env = std::getenv("COARSEKIT_SEED");
  if (!env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw Usage{"COARSEKIT_SEED must be a non-negative integer"};
  }
}

SubsetFamily resolve_family(const std::string& spec, const CoarseSpace& s, const Window& w,
                            std::size_t bound) {
  Point n = w.clamped(s.ground()).size;
  if (spec.empty() || spec == "pairs") {
    if (n < 2) throw Usage{"pair family needs a window of at least 2 points"};
    return all_pairs(n);
  }
  if (auto c = parse_call(spec)) {
    if (c->name == "all-subsets") return all_nonempty_subsets(n);
    if (c->name == "random") {
      arity(*c, 2);
      return random_subsets(to_point(c->args[0], "count"), n, to_point(c->args[1], "max size"),
                            env_seed());
    }
    if (c->name == "sampled") {
      arity(*c, 1);
      return default_pairs(s, w, bound, to_point(c->args[0], "far count"), env_seed());
    }
    throw Usage{"unknown family shorthand '" + c->name + "'"};
  }
  return family_from_json(load_json(spec), "$");
}

Subset resolve_subset(const std::string& spec) {
  if (spec.empty()) throw Usage{"--subset is required"};
  if (spec == "evens") return Subset::evens();
  if (spec == "all") return Subset::all();
  return subset_from_json(load_json(spec), "$");
}

std::pair<Point, Point> resolve_interval(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw Usage{"--interval expects 'a,b'"};
  return {to_point(trim(spec.substr(0, comma)), "interval start"),
          to_point(trim(spec.substr(comma + 1)), "interval end")};
}

Window window_of(const Options& o, Point default_size = 64) {
  return Window::of(o.window.value_or(default_size), o.halo);
}

std::size_t bound_of(const Options& o, const CoarseSpace& s) {
  if (o.bound) return *o.bound;
  return s.base_length().value_or(16);
}

int exit_for(Status s) {
  switch (s) {
    case Status::holds:
      return kHolds;
    case Status::fails:
      return kFails;
    case Status::unknown:
      return kUnknown;
  }
  return kUnknown;
}

json report_header(const std::string& command) {
  return {{"schema", kSchema}, {"command", command}};
}

void merge(json& report, const Verdict& v) {
  report.update(v.to_json());
}

int emit(std::ostream& out, const json& report, int code) {
  out << report.dump(2) << "\n";
  return code;
}

const std::vector<std::string> kChecks = {"macro-uniform", "asymorphism", "selector",
                                          "prop1",         "order-compat", "interval-bounded",
                                          "cellular",      "connected",   "large"};

int run_check(const Options& o, std::ostream& out) {
  CheckInputs in;
  CoarseSpace s = resolve_space(o.space, "--space");
  in.space = s;
  in.window = window_of(o);
  in.bound = bound_of(o, s);
  Window w = in.window;
  json report = report_header("check");
  report["check"] = o.what;
  json inputs{{"space", space_to_json(s)}, {"window", w.size}, {"halo", w.halo}, {"bound", in.bound}};
  const std::string& what = o.what;
  if (what == "macro-uniform" || what == "asymorphism") {
    in.map = resolve_map(o.map);
    if (!o.codomain.empty()) in.codomain = resolve_space(o.codomain, "--codomain");
    inputs["map"] = in.map->descriptor();
    if (in.codomain) inputs["codomain"] = space_to_json(*in.codomain);
  } else if (what == "selector" || what == "prop1") {
    in.selector = resolve_selector(o.selector, &s);
    inputs["selector"] = in.selector->descriptor();
    if (what == "selector") {
      in.family = resolve_family(o.family, s, w, in.bound);
      inputs["family"] = in.family->descriptor;
    }
  } else if (what == "order-compat" || what == "interval-bounded") {
    in.order = resolve_order(o.order);
    inputs["order"] = in.order->descriptor();
    if (what == "interval-bounded") {
      in.interval = resolve_interval(o.interval);
      inputs["interval"] = {in.interval->first, in.interval->second};
    }
  } else if (what == "large") {
    in.subset = resolve_subset(o.subset);
    inputs["subset"] = in.subset->descriptor();
  }
  report["inputs"] = inputs;

  if (!o.verify.empty()) {
    json given = load_json(o.verify);
    if (given.is_object() && given.contains("check") && given["check"] != what)
      throw Usage{"counterexample was produced by check '" + given["check"].get<std::string>() + "'"};
    json cex = given.is_object() && given.contains("counterexample") ? given["counterexample"] : given;
    auto problem = verify_counterexample(what, in, cex);
    Verdict v = problem ? Verdict::unknown("counterexample rejected: " + *problem)
                        : Verdict::fails(cex);
    v.bound_used = bounds_json(w.clamped(s.ground()), in.bound, s.levels(in.bound));
    merge(report, v);
    report["verified"] = !problem;
    return emit(out, report, exit_for(v.status));
  }

  WitnessMode mode = o.per_case ? WitnessMode::per_case : WitnessMode::shared;
  Verdict v;
  if (what == "macro-uniform") {
    v = is_macro_uniform(*in.map, s, in.codomain ? *in.codomain : s, w, in.bound);
  } else if (what == "asymorphism") {
    v = is_asymorphism(*in.map, s, in.codomain ? *in.codomain : s, w, in.bound);
  } else if (what == "selector") {
    v = is_selector(*in.selector, s, *in.family, w, in.bound);
  } else if (what == "prop1") {
    v = prop1_criterion(*in.selector, s, w, in.bound, mode);
  } else if (what == "order-compat") {
    v = is_compatible_order(*in.order, s, w, in.bound, mode);
  } else if (what == "interval-bounded") {
    v = interval_bounded(*in.order, s, in.interval->first, in.interval->second, in.bound, w);
  } else if (what == "cellular") {
    v = is_cellular_space(s, w, in.bound);
  } else if (what == "connected") {
    v = is_connected(s, w, in.bound);
  } else if (what == "large") {
    v = is_large(s, *in.subset, in.bound, w);
  }
  merge(report, v);
  if (finite_connected_flag(s, in.bound)) report["finite_connected"] = true;
  return emit(out, report, exit_for(v.status));
}

int search_exit(SearchResult::Outcome r) {
  switch (r) {
    case SearchResult::Outcome::found:
      return kHolds;
    case SearchResult::Outcome::none:
      return kFails;
    case SearchResult::Outcome::unknown:
      return kUnknown;
  }
  return kUnknown;
}

int run_search(const Options& o, std::ostream& out) {
  json report = report_header("search");
  report["search"] = o.what;
  if (o.what == "interval-order") {
    Bornology b = o.bornology == "initial-segments" || o.bornology.empty()
                      ? Bornology::initial_segments()
                      : bornology_from_json(load_json(o.bornology), "$");
    Window w = window_of(o);
    std::size_t bound = o.bound.value_or(b.length().value_or(16));
    PointOrder ord = order_from_chain_base(b);
    std::vector<Point> listing(w.size);
    for (Point p = 0; p < w.size; ++p) listing[p] = p;
    std::stable_sort(listing.begin(), listing.end(),
                     [&](Point a, Point c) { return ord.less(a, c); });
    CoarseSpace xb = discrete_from_bornology(b);
    if (w.size < 2) throw Usage{"interval-order search needs a window of at least 2 points"};
    Verdict v = is_selector(selector_from_order(ord), xb, all_pairs(w.size), w, bound);
    SearchResult r;
    r.result = v.is_holds()   ? SearchResult::Outcome::found
               : v.is_fails() ? SearchResult::Outcome::none
                              : SearchResult::Outcome::unknown;
    r.table = listing;
    r.nodes_explored = 1;
    report.update(r.to_json());
    report["order"] = ord.descriptor();
    report["selector_check"] = v.to_json();
    return emit(out, report, search_exit(r.result));
  }
  CoarseSpace s = resolve_space(o.space, "--space");
  Window w = window_of(o, o.what == "compatible-order" ? 8 : 12);
  std::size_t bound = bound_of(o, s);
  report["inputs"] = {{"space", space_to_json(s)}, {"window", w.size}, {"bound", bound}};
  SearchResult r;
  if (o.what == "two-selector") {
    SelectorSearchOptions opts;
    opts.node_cap = o.node_cap;
    r = exists_two_selector(s, resolve_family(o.family, s, w, bound), w, bound, opts);
  } else {
    r = exists_compatible_order(s, w, bound);
  }
  report.update(r.to_json());
  return emit(out, report, search_exit(r.result));
}

int run_gen(const Options& o, std::ostream& out) {
  auto build = [&]() -> CoarseSpace {
    if (o.what == "macrocube") {
      if (!o.kappa) throw Usage{"gen macrocube needs --kappa"};
      auto gamma = count_or_countable(o.gamma.empty() ? "countable" : o.gamma, "--gamma");
      if (gamma && *gamma > 64) throw Usage{"gamma too large"};
      return macrocube(*o.kappa,
                       gamma ? std::optional<unsigned>(static_cast<unsigned>(*gamma)) : std::nullopt);
    }
    if (o.what == "group-xor") return group_space(xor_group());
    if (o.what == "reversal") {
      if (o.m.empty()) throw Usage{"gen reversal needs --m"};
      return gadget_space(reversal_gadget(count_or_countable(o.m, "--m")));
    }
    if (o.what == "bounded-shift") {
      if (!o.radius) throw Usage{"gen bounded-shift needs --radius"};
      return bounded_shift_space(*o.radius);
    }
    GroundSet ground = o.size ? GroundSet::finite(*o.size) : GroundSet::countable();
    if (o.what == "discrete") {
      Bornology b = o.bornology.empty() || o.bornology == "initial-segments"
                        ? Bornology::initial_segments()
                        : bornology_from_json(load_json(o.bornology), "$");
      return discrete_from_bornology(b, ground);
    }
    if (o.what == "delta-only") return delta_only_space(ground);
    throw Usage{"unknown generator '" + o.what + "'"};
  };
  CoarseSpace s = build();
  if (o.levels) {
    if (*o.levels == 0) throw Usage{"--levels must be positive"};
    s = s.truncated(*o.levels);
  }
  return emit(out, space_to_json(s), kHolds);
}

int run_measure(const Options& o, std::ostream& out) {
  if (o.m.empty()) throw Usage{"measure spread needs --gadget-m"};
  Point m = to_point(o.m, "--gadget-m");
  ReversalGadget g = reversal_gadget(m);
  SelectorFn sel = resolve_selector(o.selector.empty() ? "min:natural" : o.selector, nullptr);
  Window w = window_of(o, g.covered());
  SpreadReport r = selector_spread(sel, g, w);
  json report = report_header("measure");
  report["quantity"] = "spread";
  report["gadget_m"] = m;
  report["window"] = w.size;
  report["selector"] = sel.descriptor();
  report["spread"] = r.spread;
  report["witness"] = r.witness;
  return emit(out, report, kHolds);
}

int run_crosscheck(const Options& o, std::ostream& out) {
  CoarseSpace s = resolve_space(o.space, "--space");
  SelectorFn sel = resolve_selector(o.selector, &s);
  Window w = window_of(o);
  std::size_t bound = bound_of(o, s);
  CrosscheckReport r = crosscheck_prop1(sel, s, w, bound);
  json report = report_header("crosscheck");
  report["statement"] = "prop1";
  report.update(r.to_json());
  int code = kUnknown;
  if (r.agreement == CrosscheckReport::Agreement::agree)
    code = r.selector.is_holds() ? kHolds : kFails;
  else if (r.agreement == CrosscheckReport::Agreement::split)
    code = kInconsistent;
  return emit(out, report, code);
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--space", o.space, "space: shorthand, JSON file or inline JSON");
  app->add_option("--window", o.window, "window size");
  app->add_option("--halo", o.halo, "halo (default 4 x window)");
  app->add_option("--bound", o.bound, "tested base prefix (default base length or 16)");
  app->add_option("--selector", o.selector, "min:ORDER, max:ORDER or selector JSON");
  app->add_option("--family", o.family, "pairs, all-subsets, random(count,max), sampled(far) or JSON");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Coarse space toolkit", "coarsekit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a space JSON");
  gen->add_option("generator", o.what, "macrocube | group-xor | reversal | discrete | bounded-shift | delta-only")
      ->required();
  gen->add_option("--kappa", o.kappa);
  gen->add_option("--gamma", o.gamma);
  gen->add_option("--m", o.m);
  gen->add_option("--radius", o.radius);
  gen->add_option("--bornology", o.bornology);
  gen->add_option("--size", o.size, "finite ground size (discrete, delta-only)");
  gen->add_option("--levels", o.levels, "truncate the base");

  auto* check = app.add_subcommand("check", "run a windowed check");
  check->add_option("property", o.what)->required()->check(CLI::IsMember(kChecks));
  add_common(check, o);
  check->add_option("--codomain", o.codomain);
  check->add_option("--map", o.map);
  check->add_option("--order", o.order);
  check->add_option("--subset", o.subset);
  check->add_option("--interval", o.interval, "a,b");
  check->add_flag("--per-case", o.per_case, "separate witnesses for the mirrored clauses");
  check->add_option("--verify-counterexample", o.verify, "report or counterexample JSON");

  auto* search = app.add_subcommand("search", "exhaustive search");
  search->add_option("kind", o.what)
      ->required()
      ->check(CLI::IsMember({"two-selector", "compatible-order", "interval-order"}));
  add_common(search, o);
  search->add_option("--bornology", o.bornology);
  search->add_option("--node-cap", o.node_cap);

  auto* measure = app.add_subcommand("measure", "measurements");
  measure->add_option("quantity", o.what)->required()->check(CLI::IsMember({"spread"}));
  add_common(measure, o);
  measure->add_option("--gadget-m", o.m)->required();

  auto* cross = app.add_subcommand("crosscheck", "compare equivalent formulations");
  cross->add_option("statement", o.what)->required()->check(CLI::IsMember({"prop1"}));
  add_common(cross, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto fail = [&](int code, json error) {
    json report{{"schema", kSchema}, {"error", std::move(error)}};
    err << "error: " << report["error"]["message"].get<std::string>() << "\n";
    return emit(out, report, code);
  };
  try {
    if (gen->parsed()) return run_gen(o, out);
    if (check->parsed()) return run_check(o, out);
    if (search->parsed()) return run_search(o, out);
    if (measure->parsed()) return run_measure(o, out);
    if (cross->parsed()) return run_crosscheck(o, out);
  } catch (const MalformedJson& e) {
    return fail(kMalformedJson, {{"kind", "malformed_json"},
                                 {"source", e.source},
                                 {"position", e.position},
                                 {"message", e.message}});
  } catch (const SchemaError& e) {
    return fail(kSchemaError, {{"kind", "schema"}, {"path", e.path()}, {"message", e.what()}});
  } catch (const Usage& e) {
    return fail(kUsage, {{"kind", "usage"}, {"message", e.message}});
  } catch (const CapExceeded& e) {
    return fail(kCapExceeded, {{"kind", "cap_exceeded"}, {"message", e.what()}});
  } catch (const Error& e) {
    return fail(kUsage, {{"kind", "invalid_input"}, {"message", e.what()}});
  }
  return kUsage;
}

}  // namespace coarsekit::cli
