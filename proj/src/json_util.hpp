#pragma once

#include "protoforge/spec_model.hpp"

#include <json.hpp>

namespace protoforge::detail {

using ojson = nlohmann::ordered_json;

/// Spec object mirroring the spec-file keys, in spec-file order.
ojson spec_to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(const nlohmann::json& j);

} // namespace protoforge::detail
