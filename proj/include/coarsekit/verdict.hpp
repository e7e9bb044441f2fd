#pragma once

#include <string>
#include <string_view>

#include "coarsekit/core.hpp"
#include "json.hpp"

namespace coarsekit {

using json = nlohmann::json;

enum class Status { holds, fails, unknown };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

// Three-valued result of a windowed check. FAILS always carries a concrete
// counterexample; UNKNOWN carries the reason the search gave up.
struct Verdict {
  Status status = Status::unknown;
  json witness;
  json counterexample;
  json bound_used = json::object();
  std::string reason;

  static Verdict holds(json witness = nullptr);
  static Verdict fails(json counterexample);
  static Verdict unknown(std::string reason);

  bool is_holds() const { return status == Status::holds; }
  bool is_fails() const { return status == Status::fails; }
  bool is_unknown() const { return status == Status::unknown; }

  Verdict& with_bounds(json bounds) {
    bound_used = std::move(bounds);
    return *this;
  }

  json to_json() const;
};

// Window and bound record attached to every verdict.
json bounds_json(const Window& w, std::size_t bound, std::size_t levels);

}  // namespace coarsekit
