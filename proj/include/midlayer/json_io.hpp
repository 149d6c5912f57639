#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "midlayer/coloring.hpp"
#include "midlayer/containers.hpp"
#include "midlayer/interval.hpp"
#include "midlayer/isoperimetry.hpp"
#include "midlayer/polymer.hpp"
#include "midlayer/sampler.hpp"

namespace midlayer {

using Json = nlohmann::ordered_json;

Json to_json(const VertexSet& set);
Json to_json(const Interval& value, int digits = 20);
Json to_json(const Polymer& polymer);
Json to_json(const ApproxPair& pair);
Json to_json(const PairConditions& conditions);
Json to_json(const ApproxPairReport& report);
Json to_json(const IsoperimetryReport& report);
Json to_json(const BalanceMargins& margins);
Json to_json(const SampleRecord& record, const std::vector<PrincipalPartition>& partitions);
Json to_json(const DefectStats& stats);

// "3,5,7" (spaces allowed; empty string is the empty set). Sorted on return.
VertexSet parse_vertex_list(const std::string& text);
// Comma-separated colors, one per vertex index.
Coloring parse_coloring(const std::string& text);

}  // namespace midlayer
