#pragma once

#include <nlohmann/json.hpp>

#include "catbell/cstate.hpp"

namespace catbell {

/// [{"coeff": [re, im], "amps": [[re, im], ...]}, ...]
nlohmann::json state_to_json(const State& s);
State state_from_json(const nlohmann::json& j);

}  // namespace catbell
