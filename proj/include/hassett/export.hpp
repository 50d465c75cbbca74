#pragma once

#include <string>

#include <json.hpp>

#include "hassett/presentation.hpp"
#include "hassett/relations.hpp"
#include "hassett/strata.hpp"
#include "hassett/tree.hpp"
#include "hassett/weights.hpp"

namespace hassett {

using Json = nlohmann::ordered_json;

Json to_json(const WeightDatum& a);
Json to_json(const ChamberSignature& sig);
// {"splits": [...], "blocks": {"<vertex>": [...]}, "dim": d}; vertices in
// canonical order.
Json to_json(const ATree& g);
Json to_json(const StrataTable& table, int only_dim = -1);
Json to_json(const Relation& r);
Json to_json(const ChowPresentation& p, const VerificationReport& report);

std::string tree_to_dot(const ATree& g);
// Nodes are strata, arrows go from a stratum to the strata covering it.
std::string poset_to_dot(const StrataTable& table, int only_dim = -1);

}  // namespace hassett
