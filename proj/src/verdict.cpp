#include "coarsekit/verdict.hpp"

#include "coarsekit/core.hpp"

namespace coarsekit {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "HOLDS";
    case Status::fails:
      return "FAILS";
    case Status::unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

Status status_from_string(std::string_view s) {
  if (s == "HOLDS") return Status::holds;
  if (s == "FAILS") return Status::fails;
  if (s == "UNKNOWN") return Status::unknown;
  throw InvalidInput("unknown verdict status '" + std::string(s) + "'");
}

Verdict Verdict::holds(json witness) {
  Verdict v;
  v.status = Status::holds;
  v.witness = std::move(witness);
  return v;
}

Verdict Verdict::fails(json counterexample) {
  Verdict v;
  v.status = Status::fails;
  v.counterexample = std::move(counterexample);
  return v;
}

Verdict Verdict::unknown(std::string reason) {
  Verdict v;
  v.status = Status::unknown;
  v.reason = std::move(reason);
  return v;
}

json Verdict::to_json() const {
  json j;
  j["status"] = std::string(to_string(status));
  j["witness"] = witness;
  j["counterexample"] = counterexample;
  j["bound_used"] = bound_used;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

json bounds_json(const Window& w, std::size_t bound, std::size_t levels) {
  json halo = w.halo == kNoLimit ? json("unbounded") : json(w.halo);
  return {{"window", w.size}, {"halo", halo}, {"bound", bound}, {"levels_tested", levels}};
}

}  // namespace coarsekit
