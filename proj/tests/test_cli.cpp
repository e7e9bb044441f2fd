#include <sstream>

#include "coarsekit/cli.hpp"
#include "support.hpp"

using namespace coarsekit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("order compatibility on the binary macrocube") {
  Run r = invoke({"check", "order-compat", "--space", "macrocube(2,3)", "--order", "colex", "--window", "8",
               "--bound", "4"});
  CHECK(r.code == cli::kHolds);
  json j = r.report();
  CHECK(j["status"] == "HOLDS");
  CHECK(j["witness"]["map"] == json({{"0", 0}, {"1", 1}, {"2", 2}}));
}

TEST_CASE("diagonal-only space is not connected") {
  Run r = invoke({"check", "connected", "--space", "delta-only", "--window", "2"});
  CHECK(r.code == cli::kFails);
  json j = r.report();
  CHECK(j["status"] == "FAILS");
  CHECK(j["counterexample"]["pair"] == json({0, 1}));
}

TEST_CASE("spread measurements") {
  Run one = invoke({"measure", "spread", "--gadget-m", "1", "--window", "1"});
  CHECK(one.code == 0);
  CHECK(one.report()["spread"] == 0);
  Run four = invoke({"measure", "spread", "--gadget-m", "1", "--window", "4"});
  CHECK(four.report()["spread"] == 1);
  Run three = invoke({"measure", "spread", "--gadget-m", "3", "--window", "16"});
  CHECK(three.report()["spread"] == 5);
  Run def = invoke({"measure", "spread", "--gadget-m", "2"});
  CHECK(def.report()["window"] == 9);
  CHECK(def.report()["spread"] == 3);
}

TEST_CASE("generated spaces feed back into checks") {
  Run g = invoke({"gen", "macrocube", "--kappa", "2", "--gamma", "3"});
  REQUIRE(g.code == 0);
  json space = g.report();
  CHECK(space_to_json(space_from_json(space)) == space);
  Run c = invoke({"check", "order-compat", "--space", space.dump(), "--order", "colex", "--window", "8"});
  CHECK(c.code == cli::kHolds);

  Run rev = invoke({"gen", "reversal", "--m", "2"});
  CHECK(space_from_json(rev.report()).base_length() == 2u);
  Run disc = invoke({"gen", "discrete", "--size", "6"});
  CHECK(space_from_json(disc.report()).ground() == GroundSet::finite(6));
  CHECK(invoke({"gen", "group-xor", "--levels", "3"}).code == 0);
  CHECK(invoke({"gen", "bounded-shift", "--radius", "2"}).code == 0);
  CHECK(invoke({"gen", "delta-only"}).code == 0);
}

TEST_CASE("reports are byte-identical across runs") {
  std::vector<std::string> args{"check", "selector", "--space", "reversal(3)", "--selector", "max:natural",
                                "--window", "16", "--bound", "2"};
  Run a = invoke(args), b = invoke(args);
  CHECK(a.out == b.out);
  std::vector<std::string> s{"search", "two-selector", "--space", "macrocube(2,3)", "--window", "6",
                             "--bound", "2"};
  CHECK(invoke(s).out == invoke(s).out);
}

TEST_CASE("failing reports re-validate") {
  Run f = invoke({"check", "selector", "--space", "reversal(2)", "--selector", "max:natural", "--window", "9",
               "--bound", "2"});
  REQUIRE(f.code == cli::kFails);
  json rep = f.report();
  REQUIRE(rep["counterexample"].is_object());

  Run v = invoke({"check", "selector", "--space", "reversal(2)", "--selector", "max:natural", "--window", "9",
               "--bound", "2", "--verify-counterexample", rep.dump()});
  CHECK(v.code == cli::kFails);
  CHECK(v.report()["verified"] == true);

  json tampered = rep;
  tampered["counterexample"]["violations"][0]["fB"] = 0;
  Run t = invoke({"check", "selector", "--space", "reversal(2)", "--selector", "max:natural", "--window", "9",
               "--bound", "2", "--verify-counterexample", tampered.dump()});
  CHECK(t.code == cli::kUnknown);
  CHECK(t.report()["reason"].get<std::string>().rfind("counterexample rejected", 0) == 0);

  // A correct selector cannot be refuted by a copied counterexample.
  Run other = invoke({"check", "selector", "--space", "reversal(2)", "--selector", "min:natural", "--window",
                   "9", "--bound", "2", "--verify-counterexample", rep.dump()});
  CHECK(other.code == cli::kUnknown);

  Run conn = invoke({"check", "connected", "--space", "delta-only", "--window", "2"});
  Run cv = invoke({"check", "connected", "--space", "delta-only", "--window", "2", "--verify-counterexample",
                conn.out});
  CHECK(cv.code == cli::kFails);
  Run mismatch = invoke({"check", "large", "--space", "delta-only", "--window", "2", "--subset", "evens",
                      "--verify-counterexample", conn.out});
  CHECK(mismatch.code != cli::kFails);
}

TEST_CASE("exit codes") {
  Run bad = invoke({"check", "connected", "--space", "{\"schema\": ", "--window", "2"});
  CHECK(bad.code == cli::kMalformedJson);
  json e = bad.report();
  CHECK(e["error"]["kind"] == "malformed_json");
  CHECK(e["error"].contains("position"));
  CHECK_FALSE(bad.err.empty());

  Run schema = invoke({"check", "connected", "--space",
                    R"({"schema":"coarsekit/1","ground":{"kind":"finite","size":3},"base":[{"kind":"nope"}]})"});
  CHECK(schema.code == cli::kSchemaError);
  CHECK(schema.report()["error"]["path"] == "$.base[0].kind");

  CHECK(invoke({"check", "no-such-property", "--space", "delta-only"}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"check", "selector", "--space", "no-such-space(1)"}).code == cli::kUsage);
  CHECK(invoke({"search", "two-selector", "--space", "macrocube(2,4)", "--window", "16"}).code ==
        cli::kCapExceeded);
  CHECK(invoke({"search", "two-selector", "--space", "macrocube(2,3)", "--window", "8", "--bound", "0"}).code ==
        cli::kUnknown);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("remaining checks run from the command line") {
  CHECK(invoke({"check", "macro-uniform", "--space", "group-xor", "--map", "xor(5)", "--window", "32", "--bound",
             "4"})
            .code == cli::kHolds);
  CHECK(invoke({"check", "asymorphism", "--space", "macrocube(2,3)", "--map", "swap(2,0,1)", "--window", "8"})
            .code == cli::kHolds);
  Run noinv = invoke({"check", "asymorphism", "--space", "macrocube(2,3)", "--map", "constant(0)", "--window", "8"});
  CHECK(noinv.code == cli::kUsage);
  CHECK(noinv.err.find("inverse required") != std::string::npos);
  CHECK(invoke({"check", "cellular", "--space", "macrocube(3,2)", "--window", "9"}).code == cli::kHolds);
  CHECK(invoke({"check", "large", "--space", "bounded-shift(1)", "--subset", "evens", "--window", "16",
             "--bound", "2"})
            .code == cli::kHolds);
  CHECK(invoke({"check", "interval-bounded", "--space", "bounded-shift(1)", "--order", "natural", "--interval",
             "2,7", "--window", "16", "--bound", "3"})
            .code == cli::kHolds);
  CHECK(invoke({"check", "interval-bounded", "--space", "bounded-shift(1)", "--order", "natural", "--interval",
                "2,7", "--window", "16", "--bound", "2"})
            .code == cli::kUnknown);
  Run p = invoke({"crosscheck", "prop1", "--space", "bounded-shift(1)", "--selector", "min:natural", "--window",
               "8", "--bound", "2"});
  CHECK(p.code == cli::kHolds);
  CHECK(p.report()["agreement"] == "agree");
  Run io = invoke({"search", "interval-order", "--bornology", "initial-segments", "--window", "8"});
  CHECK(io.code == cli::kHolds);
  CHECK(io.report()["selector_check"]["status"] == "HOLDS");
}
