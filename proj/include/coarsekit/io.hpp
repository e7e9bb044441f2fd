#pragma once

// JSON encodings of spaces, entourages, orders, selectors, maps, families
// and subsets. Parsing errors carry the JSON path of the offending field.

#include <string>

#include "coarsekit/search.hpp"

namespace coarsekit {

inline constexpr const char* kSchema = "coarsekit/1";

class SchemaError : public InvalidInput {
 public:
  SchemaError(std::string path, const std::string& message)
      : InvalidInput(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

json ground_to_json(const GroundSet& g);
GroundSet ground_from_json(const json& j, const std::string& path = "$.ground");

Permutation permutation_from_json(const json& j, const std::string& path);
Entourage entourage_from_json(const json& j, const std::string& path);
Bornology bornology_from_json(const json& j, const std::string& path);
Subset subset_from_json(const json& j, const std::string& path);
GroupDesc group_from_json(const json& j, const std::string& path);

json space_to_json(const CoarseSpace& s);
CoarseSpace space_from_json(const json& j, const std::string& path = "$");
// A bare generator descriptor ({"kind":"macrocube",...}); `ground` is used by
// generators that do not fix their own ground.
CoarseSpace space_from_generator(const json& g, std::optional<GroundSet> ground,
                                 const std::string& path);

PointOrder order_from_json(const json& j, const std::string& path = "$");
// `space` is needed for transferred selectors.
SelectorFn selector_from_json(const json& j, const std::string& path = "$",
                              const CoarseSpace* space = nullptr);
PointMap map_from_json(const json& j, const std::string& path = "$");
SubsetFamily family_from_json(const json& j, const std::string& path = "$");

}  // namespace coarsekit
