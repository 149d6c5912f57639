#include "midlayer/json_io.hpp"

#include <sstream>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

std::vector<long> parse_integers(const std::string& text, const char* what) {
  std::vector<long> out;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (text.find_first_not_of(" \t,") == std::string::npos) continue;
      throw ParameterError(std::string("empty entry in ") + what + " list");
    }
    const auto last = token.find_last_not_of(" \t");
    token = token.substr(first, last - first + 1);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(token, &used);
    } catch (const std::exception&) {
      throw ParameterError(std::string("bad ") + what + " entry '" + token + "'");
    }
    if (used != token.size()) {
      throw ParameterError(std::string("bad ") + what + " entry '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

Json to_json(const VertexSet& set) {
  Json out = Json::array();
  for (Vertex v : set) out.push_back(v);
  return out;
}

Json to_json(const Interval& value, int digits) {
  return Json{{"lower", value.lower_string(digits)},
              {"upper", value.upper_string(digits)},
              {"midpoint", value.midpoint_string(digits)}};
}

Json to_json(const Polymer& polymer) {
  return Json{{"vertices", to_json(polymer.vertices)},
              {"size", polymer.size()},
              {"neighborhood_size", polymer.neighborhood_size}};
}

Json to_json(const ApproxPair& pair) {
  return Json{{"F", to_json(pair.f)}, {"S", to_json(pair.s)}, {"psi", pair.psi}};
}

Json to_json(const PairConditions& c) {
  return Json{{"approx1", c.approx1}, {"approx2", c.approx2}, {"approx3", c.approx3}};
}

Json to_json(const ApproxPairReport& report) {
  Json layers = Json::array();
  for (const auto& layer : report.layers) {
    layers.push_back(Json{{"X", to_json(layer.x)},
                          {"F", to_json(layer.f)},
                          {"S", to_json(layer.s)},
                          {"conditions", to_json(layer.conditions)},
                          {"boundary", layer.boundary},
                          {"gap_holds", layer.gap_holds}});
  }
  return Json{{"conditions", to_json(report.conditions)},
              {"layers", layers},
              {"valid", report.valid()}};
}

Json to_json(const IsoperimetryReport& r) {
  return Json{{"set_size", r.set_size},
              {"neighborhood_size", r.neighborhood_size},
              {"lovasz", static_cast<double>(r.lovasz)},
              {"lovasz_holds", r.lovasz_holds},
              {"small_clause_applies", r.small_clause_applies},
              {"small_clause_holds", r.small_clause_holds},
              {"linear_clause_applies", r.linear_clause_applies},
              {"linear_clause_holds", r.linear_clause_holds}};
}

Json to_json(const BalanceMargins& m) {
  return Json{{"a", m.a_margins}, {"b", m.b_margins}, {"max", m.max_margin}};
}

Json to_json(const SampleRecord& r, const std::vector<PrincipalPartition>& partitions) {
  Json family = Json::array();
  for (const auto& gamma : r.family) family.push_back(to_json(gamma));
  return Json{{"index", r.index},
              {"partition", partitions.at(r.partition).to_string()},
              {"family", family},
              {"lambda", r.family_size},
              {"coloring", r.coloring},
              {"flaw_size", r.flaw_size},
              {"margins", to_json(r.margins)}};
}

Json to_json(const DefectStats& s) {
  Json tail = Json::array();
  for (const auto& [t, f] : s.tail) tail.push_back(Json{{"t", t}, {"frequency", f}});
  Json balanced = Json::array();
  for (const auto& [level, f] : s.balanced) balanced.push_back(Json{{"s", level}, {"frequency", f}});
  return Json{{"samples", s.samples},
              {"defect_match", s.defect_match},
              {"mean_lambda", s.mean_family_size},
              {"tail", tail},
              {"balanced", balanced}};
}

VertexSet parse_vertex_list(const std::string& text) {
  VertexSet out;
  for (long v : parse_integers(text, "vertex")) {
    if (v < 0) throw ParameterError("negative vertex index");
    out.push_back(static_cast<Vertex>(v));
  }
  const std::size_t before = out.size();
  out = make_vertex_set(std::move(out));
  if (out.size() != before) throw ParameterError("duplicate vertex in list");
  return out;
}

Coloring parse_coloring(const std::string& text) {
  Coloring out;
  for (long c : parse_integers(text, "color")) out.push_back(static_cast<Color>(c));
  return out;
}

}  // namespace midlayer
