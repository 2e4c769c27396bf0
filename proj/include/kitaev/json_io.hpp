#pragma once

#include <nlohmann/json.hpp>

#include "kitaev/operator_sum.hpp"
#include "kitaev/syndrome.hpp"

namespace kitaev {

/// [{coeff_re, coeff_im, edges: [{edge: {x, y, dir}, g: [..], chi: [..]}]}];
/// edges acting trivially are omitted.
nlohmann::json operator_to_json(const OperatorSum& x);
OperatorSum operator_from_json(const SpacePtr& space, const nlohmann::json& j);

/// {sites: [{kind, x, y, value: [..]}]} over the window, in window order.
nlohmann::json syndrome_to_json(const SyndromeConfig& c);
SyndromeConfig syndrome_from_json(const GroupSpec& group, const nlohmann::json& j);

nlohmann::json edge_to_json(const EdgeId& e);
EdgeId edge_from_json(const nlohmann::json& j);

}  // namespace kitaev
