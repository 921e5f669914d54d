#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "gca/presentation.hpp"

namespace gca {

using Json = nlohmann::ordered_json;

struct TruncationSpec {
  std::uint64_t copies = 3;
  std::uint64_t tail_len = 6;
};

// JSON mirrors the presentation types field-for-field and round-trips
// through presentation_from_json.
Json presentation_to_json(const GraphPresentation& g);
GraphPresentation presentation_from_json(const Json& j);

// DOT shows a finite expansion; truncated constructs are labelled with "...".
std::string presentation_to_dot(const GraphPresentation& g,
                                const TruncationSpec& trunc);

std::string to_string(const Multiplicity& m);

}  // namespace gca
