#include "midlayer/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "midlayer/cluster.hpp"
#include "midlayer/coloring.hpp"
#include "midlayer/containers.hpp"
#include "midlayer/counting.hpp"
#include "midlayer/errors.hpp"
#include "midlayer/graph.hpp"
#include "midlayer/isoperimetry.hpp"
#include "midlayer/json_io.hpp"
#include "midlayer/parallel.hpp"
#include "midlayer/partition_function.hpp"
#include "midlayer/polymer.hpp"
#include "midlayer/rotation.hpp"
#include "midlayer/sampler.hpp"
#include "midlayer/series.hpp"

namespace midlayer {

namespace {

struct Options {
  int d = 2;
  int q = 4;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> max_boundary;
  std::optional<std::size_t> k;
  int psi = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  int workers = 0;
  std::string out;
  int precision = static_cast<int>(kDefaultPrecisionBits);

  std::optional<std::string> vertices;
  std::optional<std::string> coloring;
  std::optional<std::string> f_set;
  std::optional<std::string> s_set;
  std::optional<Vertex> vertex;
  std::size_t partition = 0;
  std::string xi = "1";
  std::string eps_constant = "1";
  std::string method = "dp";
  std::size_t family_cap = FamilyLimits{}.max_families;
  std::size_t cluster_cap = ClusterLimits{}.max_multisets;
  int ursell_cap = kMaxUrsellVertices;
  double max_states = CountLimits{}.max_states;
};

using Handler = std::function<void(const Options&, std::ostream&)>;

void emit(std::ostream& out, const Json& doc) { out << doc.dump() << '\n'; }

PolymerParams polymer_params(const Options& o, const MidLayerGraph& g) {
  PolymerParams p;
  p.max_size = o.max_size.value_or(g.size());
  p.max_boundary = o.max_boundary.value_or(std::numeric_limits<std::size_t>::max());
  return p;
}

PrincipalPartition chosen_partition(const Options& o) {
  const auto all = principal_partitions(o.q);
  if (o.partition >= all.size()) {
    throw ParameterError("partition index " + std::to_string(o.partition) + " out of range (" +
                         std::to_string(all.size()) + " partitions)");
  }
  return all[o.partition];
}

FamilyLimits family_limits(const Options& o) {
  FamilyLimits f;
  f.max_families = o.family_cap;
  return f;
}

ClusterLimits cluster_limits(const Options& o) {
  ClusterLimits c;
  c.max_multisets = o.cluster_cap;
  c.max_ursell_vertices = o.ursell_cap;
  return c;
}

CountLimits count_limits(const Options& o) {
  CountLimits c;
  c.max_states = o.max_states;
  return c;
}

VertexSet required_set(const std::optional<std::string>& text, const char* flag) {
  if (!text) throw ParameterError(std::string("missing ") + flag);
  return parse_vertex_list(*text);
}

void check_vertices(const MidLayerGraph& g, const VertexSet& x) {
  if (!x.empty() && x.back() >= g.size()) {
    throw ParameterError("vertex " + std::to_string(x.back()) + " out of range");
  }
}

Json string_map(const std::map<std::string, BigInt>& m) {
  Json out = Json::object();
  for (const auto& [key, value] : m) out[key] = to_string(value);
  return out;
}

Json rationals(const std::vector<Rational>& values, std::size_t from = 0) {
  Json out = Json::array();
  for (std::size_t i = from; i < values.size(); ++i) out.push_back(to_string(values[i]));
  return out;
}

// ---- graph / isoperimetry / counting ---------------------------------------

void graph_info(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const RotatedView view(g);
  emit(out, Json{{"d", g.d()},
                 {"n", g.n()},
                 {"N", g.size()},
                 {"edges", g.edge_count()},
                 {"regular", g.d()},
                 {"layer_size", g.layer_size()},
                 {"v_star", view.v_star().size()}});
}

void iso_check(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  if (o.vertices) {
    const VertexSet x = parse_vertex_list(*o.vertices);
    check_vertices(g, x);
    const auto report = isoperimetry_check(g, x);
    emit(out, Json{{"d", g.d()},
                   {"X", to_json(x)},
                   {"reported", to_json(report)},
                   {"asserted", Json::object()}});
    return;
  }
  const std::size_t k = o.k.value_or(3);
  const auto sweep = isoperimetry_sweep(g, k);
  emit(out, Json{{"d", g.d()},
                 {"max_size", k},
                 {"instances", sweep.instances},
                 {"asserted",
                  {{"small_clause_failures", sweep.small_clause_failures},
                   {"lovasz_failures", sweep.lovasz_failures}}},
                 {"reported",
                  {{"linear_clause_failures", sweep.linear_clause_failures},
                   {"min_lovasz_slack", static_cast<double>(sweep.min_lovasz_slack)}}}});
  if (sweep.small_clause_failures + sweep.lovasz_failures > 0) {
    throw ConsistencyError("isoperimetric bound violated");
  }
}

void count_exact(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const CountLimits limits = count_limits(o);
  BigInt count;
  if (o.method == "dp") {
    count = count_colorings_exact(g, o.q, limits);
  } else if (o.method == "layer") {
    count = count_colorings_layer_sum(g, o.q, limits);
  } else if (o.method == "brute") {
    count = static_cast<unsigned long>(brute_enumerate(g, o.q, limits).size());
  } else {
    throw ParameterError("unknown method '" + o.method + "' (dp, layer, brute)");
  }
  emit(out, Json{{"d", o.d}, {"q", o.q}, {"method", o.method}, {"c_q", to_string(count)}});
}

void flaw_analyze(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const int threshold = threshold_polymer_size(o.q);
  if (!o.coloring) {
    const auto census = structure_census(g, o.q, count_limits(o));
    Json classes = Json::array();
    for (const auto& per : census.flaw_classes) classes.push_back(per.size());
    emit(out, Json{{"d", o.d},
                   {"q", o.q},
                   {"threshold", threshold},
                   {"c_q", to_string(census.total)},
                   {"reported",
                    {{"typical", to_string(census.typical)},
                     {"typical_fraction", to_string(census.typical_fraction)},
                     {"typical_fraction_decimal", census.typical_fraction.get_d()},
                     {"flaw_classes_per_partition", classes}}},
                   {"asserted", {{"bookkeeping_holds", census.bookkeeping_holds}}}});
    if (!census.bookkeeping_holds) throw ConsistencyError("flaw classes do not partition c_q");
    return;
  }
  const Coloring f = parse_coloring(*o.coloring);
  const FlawReport report = nearest_ground_state(g, f, o.q);
  Json components = Json::array();
  for (const auto& c : report.components) components.push_back(to_json(c));
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"partition", report.partition.to_string()},
                 {"flaw", to_json(report.flaw)},
                 {"components", components},
                 {"max_component_size", report.max_component_size},
                 {"threshold", threshold},
                 {"reported",
                  {{"below_threshold",
                    report.max_component_size < static_cast<std::size_t>(threshold)},
                   {"margins", to_json(balance_margins(g, f, report.partition))}}},
                 {"asserted", Json::object()}});
}

// ---- polymers ---------------------------------------------------------------

void polymers_enumerate(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PolymerParams params = polymer_params(o, g);
  if (o.vertex && *o.vertex >= g.size()) throw ParameterError("root vertex out of range");
  const auto polymers = enumerate_polymers(g, params, o.vertex);
  Json by_size = Json::object();
  std::map<std::size_t, std::size_t> sizes;
  std::size_t same_layer_pairs = 0;
  std::size_t edge_pairs = 0;
  Json list = Json::array();
  for (const auto& p : polymers) {
    ++sizes[p.size()];
    if (p.size() == 2) {
      if (g.adjacent(p.vertices[0], p.vertices[1])) {
        ++edge_pairs;
      } else {
        ++same_layer_pairs;
      }
    }
    list.push_back(to_json(p.vertices));
  }
  for (const auto& [size, count] : sizes) by_size[std::to_string(size)] = count;
  Json doc{{"d", o.d},
           {"max_size", params.max_size},
           {"count", polymers.size()},
           {"by_size", by_size},
           {"pairs_same_layer", same_layer_pairs},
           {"pairs_edge", edge_pairs},
           {"polymers", list}};
  if (o.vertex) doc["root"] = *o.vertex;
  emit(out, doc);
}

void polymers_weight(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const VertexSet x = required_set(o.vertices, "--vertices");
  check_vertices(g, x);
  const Polymer polymer = make_polymer(g, x);
  const PrincipalPartition p = chosen_partition(o);
  const Rational w = weight(g, polymer, p);
  Json doc{{"d", o.d},
           {"q", o.q},
           {"partition", p.to_string()},
           {"polymer", to_json(polymer)},
           {"weight", to_string(w)},
           {"tilted", to_json(tilted_weight(g, polymer, w, o.precision))}};
  if (g.d() <= kDefaultCountLimits.max_enumeration_d) {
    const Rational global = weight_global_oracle(g, polymer, p);
    doc["global_oracle"] = to_string(global);
    doc["asserted"] = Json{{"local_equals_global", global == w}};
    if (global != w) {
      emit(out, doc);
      throw ConsistencyError("local and global weights differ");
    }
  }
  emit(out, doc);
}

void xi_compute(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PrincipalPartition p = chosen_partition(o);
  const PolymerModel model = PolymerModel::build(g, polymer_params(o, g), p);
  const auto result = partition_function(model, family_limits(o));
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"partition", p.to_string()},
                 {"polymer_count", model.size()},
                 {"xi", to_string(result.xi)},
                 {"family_count", result.family_count},
                 {"max_family_size", result.max_family_size},
                 {"max_family_polymers", result.max_family_polymers}});
}

void capture_check(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PrincipalPartition p = chosen_partition(o);
  const PolymerParams params = polymer_params(o, g);
  const PolymerModel model = PolymerModel::build(g, params, p);
  const BigInt captured = capture_count(model, family_limits(o));
  Json doc{{"d", o.d},
           {"q", o.q},
           {"partition", p.to_string()},
           {"max_size", params.max_size},
           {"capture_count", to_string(captured)}};
  if (g.d() <= kDefaultCountLimits.max_enumeration_d) {
    const BigInt brute = capture_count_bruteforce(g, p, params);
    doc["bruteforce"] = to_string(brute);
    doc["asserted"] = Json{{"equal", brute == captured}};
    if (brute != captured) {
      emit(out, doc);
      throw ConsistencyError("capture count differs from brute force");
    }
  }
  emit(out, doc);
}

void kp_check(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PrincipalPartition p = chosen_partition(o);
  const PolymerModel model = PolymerModel::build(g, polymer_params(o, g), p);
  KpSettings settings;
  settings.xi = parse_rational(o.xi);
  settings.precision = o.precision;
  std::vector<Vertex> targets;
  if (o.vertex) {
    targets.push_back(*o.vertex);
  } else {
    for (Vertex v = 0; v < g.size(); ++v) targets.push_back(v);
  }
  Json rows = Json::array();
  std::size_t holds = 0;
  std::size_t fails = 0;
  for (Vertex v : targets) {
    const KpReport r = kp_lhs(model, v, settings);
    holds += r.status == "holds";
    fails += r.status == "fails";
    rows.push_back(Json{{"vertex", v},
                        {"polymers", r.polymer_count},
                        {"lhs", to_json(r.lhs)},
                        {"bound", to_json(r.bound)},
                        {"status", r.status}});
  }
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"partition", p.to_string()},
                 {"xi", to_string(settings.xi)},
                 {"reported",
                  {{"vertices", rows},
                   {"holds", holds},
                   {"fails", fails},
                   {"indeterminate", targets.size() - holds - fails}}},
                 {"asserted", Json::object()}});
}

// ---- clusters / expansion -----------------------------------------------------

void clusters_lk(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PrincipalPartition p = chosen_partition(o);
  const std::size_t k = o.k.value_or(1);
  const SeriesTerm term = series_term(g, polymer_params(o, g), p, k, cluster_limits(o));
  Json doc{{"d", o.d},
           {"q", o.q},
           {"partition", p.to_string()},
           {"k", k},
           {"L_k", to_string(term.value)},
           {"cluster_count", to_string(term.cluster_count)},
           {"multiset_count", term.multiset_count},
           {"ordered_by_shape", string_map(term.ordered_by_shape)}};
  // Closed forms hold for the unrestricted polymer set.
  if (k <= 2 && o.q >= 3 && !o.max_boundary && o.max_size.value_or(k) >= k) {
    const Rational closed = k == 1 ? closed_form_L1(o.d, p.a_size(), p.b_size())
                                   : closed_form_L2(o.d, p.a_size(), p.b_size());
    doc["closed_form"] = to_string(closed);
    doc["asserted"] = Json{{"matches_closed_form", closed == term.value}};
    if (closed != term.value) {
      emit(out, doc);
      throw ConsistencyError("enumerated L(k) differs from its closed form");
    }
  }
  emit(out, doc);
}

ApproxOptions approx_options(const Options& o) {
  ApproxOptions a;
  a.precision = o.precision;
  a.eps_constant = parse_rational(o.eps_constant);
  a.cluster_limits = cluster_limits(o);
  if (o.max_boundary) a.params.max_boundary = *o.max_boundary;
  return a;
}

Json approx_json(const ApproxReport& r) {
  Json types = Json::array();
  for (const auto& t : r.types) {
    types.push_back(Json{{"a", t.a},
                         {"b", t.b},
                         {"multiplicity", t.multiplicity},
                         {"terms", rationals(t.terms)},
                         {"exponent", to_string(t.exponent)},
                         {"exponent_decimal", t.exponent.get_d()}});
  }
  return Json{{"d", r.d},
              {"q", r.q},
              {"t", r.t},
              {"N", to_string(r.n)},
              {"partition_count", r.partition_count},
              {"types", types},
              {"log_value", to_json(r.log_value)},
              {"value", to_json(r.value)},
              {"eps_bound", to_string(r.eps_bound)},
              {"eps_bound_decimal", r.eps_bound.get_d()}};
}

int default_truncation(const Options& o) {
  return o.k ? static_cast<int>(*o.k) : threshold_polymer_size(o.q);
}

void expansion_approx(const Options& o, std::ostream& out) {
  const ApproxReport r = approx_count(o.d, o.q, default_truncation(o), approx_options(o));
  emit(out, Json{{"reported", approx_json(r)},
                 {"asserted", Json::object()},
                 {"eps_constant", o.eps_constant}});
}

void expansion_compare(const Options& o, std::ostream& out) {
  const CompareReport r =
      compare_with_exact(o.d, o.q, default_truncation(o), approx_options(o), count_limits(o));
  emit(out, Json{{"exact", to_string(r.exact)},
                 {"reported",
                  {{"approx", approx_json(r.approx)},
                   {"relative_error", to_json(r.relative_error)}}},
                 {"asserted", Json::object()}});
}

void expansion_logcheck(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const PrincipalPartition p = chosen_partition(o);
  const std::size_t degree = o.k.value_or(static_cast<std::size_t>(threshold_polymer_size(o.q)));
  const PolymerModel model = PolymerModel::build(g, polymer_params(o, g), p);
  const FormalLogReport r = formal_log_check(model, degree, family_limits(o), cluster_limits(o));
  Json matches = Json::array();
  for (std::size_t k = 1; k <= degree; ++k) matches.push_back(static_cast<bool>(r.matches[k]));
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"partition", p.to_string()},
                 {"K", degree},
                 {"xi_coefficients", rationals(r.xi_coefficients)},
                 {"log_coefficients", rationals(r.log_coefficients, 1)},
                 {"cluster_terms", rationals(r.cluster_terms, 1)},
                 {"matches", matches},
                 {"asserted", {{"all_match", r.all_match}}}});
  if (!r.all_match) throw ConsistencyError("formal log and cluster sums differ");
}

void expansion_bounds(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const std::size_t window = o.k.value_or(3);
  const TermBoundReport r =
      term_bound_check(g, o.q, window, polymer_params(o, g), cluster_limits(o));
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"k", row.k},
                        {"L_k", to_string(row.term)},
                        {"bound", to_string(row.bound)},
                        {"ratio", to_string(row.ratio)},
                        {"ratio_decimal", row.ratio.get_d()}});
  }
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"delta", to_string(r.delta)},
                 {"reported", {{"rows", rows}}},
                 {"asserted", Json::object()}});
}

// ---- containers ------------------------------------------------------------------

void containers_cover(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  if (o.vertices) {
    const VertexSet x = parse_vertex_list(*o.vertices);
    check_vertices(g, x);
    const auto r = mutual_cover(g, x);
    emit(out, Json{{"d", o.d},
                   {"X", to_json(x)},
                   {"Y", to_json(r.cover)},
                   {"bound", r.bound},
                   {"asserted",
                    {{"covers_x", r.covers_x},
                     {"inside_boundary", r.inside_boundary},
                     {"within_bound", r.within_bound}}}});
    if (!(r.covers_x && r.inside_boundary && r.within_bound)) {
      throw ConsistencyError("mutual cover missed a guarantee");
    }
    return;
  }
  // Cover L_{d-1} by L_d.
  BipartiteInstance instance;
  instance.p_count = g.layer_size();
  instance.a = g.d();
  instance.b = g.d();
  for (Vertex y : g.upper_layer()) {
    std::vector<std::size_t> row;
    for (Vertex u : g.neighbors(y)) row.push_back(u);
    instance.q_neighbors.push_back(std::move(row));
  }
  const CoverReport r = greedy_cover(instance);
  VertexSet chosen;
  for (std::size_t j : r.chosen) chosen.push_back(static_cast<Vertex>(g.layer_size() + j));
  emit(out, Json{{"d", o.d},
                 {"P", "lower layer"},
                 {"Q", "upper layer"},
                 {"cover", to_json(chosen)},
                 {"size", chosen.size()},
                 {"bound", r.bound},
                 {"asserted", {{"covers", r.covers}, {"within_bound", r.within_bound}}}});
  if (!r.covers || !r.within_bound) throw ConsistencyError("greedy cover missed a guarantee");
}

void containers_pair(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const VertexSet x = required_set(o.vertices, "--vertices");
  check_vertices(g, x);
  const ApproxPairResult r = construct_approx_pair(g, x, o.psi);
  Json doc{{"d", o.d}, {"X", to_json(x)}, {"success", r.success}, {"iterations", r.iterations}};
  if (r.success) {
    doc["pair"] = to_json(r.pair);
    doc["report"] = to_json(r.report);
  } else {
    doc["failure"] = r.failure;
  }
  emit(out, doc);
}

void containers_verify(const Options& o, std::ostream& out) {
  const MidLayerGraph g(o.d);
  const VertexSet x = required_set(o.vertices, "--vertices");
  ApproxPair pair;
  pair.f = required_set(o.f_set, "--F");
  pair.s = required_set(o.s_set, "--S");
  pair.psi = o.psi;
  check_vertices(g, x);
  check_vertices(g, pair.f);
  check_vertices(g, pair.s);
  const auto report = verify_approx_pair(g, x, pair);
  emit(out, Json{{"d", o.d}, {"X", to_json(x)}, {"pair", to_json(pair)}, {"report", to_json(report)}});
}

// ---- sampler ------------------------------------------------------------------------

SamplerConfig sampler_config(const Options& o) {
  const MidLayerGraph g(o.d);
  SamplerConfig c;
  c.d = o.d;
  c.q = o.q;
  c.params = polymer_params(o, g);
  c.seed = o.seed;
  c.sample_count = o.samples;
  c.family_limits = family_limits(o);
  return c;
}

void sample_run(const Options& o, std::ostream& out) {
  const MuHatSampler sampler(sampler_config(o));
  const auto partitions = principal_partitions(o.q);
  for (const auto& record : sampler.run()) emit(out, to_json(record, partitions));
}

void sample_stats(const Options& o, std::ostream& out) {
  const SamplerConfig config = sampler_config(o);
  if (config.sample_count == 0) throw ParameterError("--samples must be positive");
  const MuHatSampler sampler(config);
  const auto samples = sampler.run();
  Json reported = to_json(defect_stats(sampler.graph(), samples));
  Json asserted = Json::object();
  if (o.d <= kDefaultCountLimits.max_enumeration_d) {
    const ExactMuHat exact = exact_mu_hat_pmf(sampler.graph(), o.q, config.params);
    Rational total = 0;
    for (const auto& [f, mass] : exact.pmf) total += mass;
    reported["total_variation"] = total_variation(samples, exact.pmf);
    reported["support"] = exact.pmf.size();
    reported["exact_defect_match"] = to_string(exact.defect_match_probability);
    reported["exact_defect_match_decimal"] = exact.defect_match_probability.get_d();
    asserted["pmf_sums_to_one"] = total == 1;
  }
  emit(out, Json{{"d", o.d},
                 {"q", o.q},
                 {"seed", o.seed},
                 {"reported", reported},
                 {"asserted", asserted}});
  if (asserted.value("pmf_sums_to_one", true) == false) throw ConsistencyError("pmf does not sum to 1");
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"graph info", graph_info},
      {"iso check", iso_check},
      {"count exact", count_exact},
      {"flaw analyze", flaw_analyze},
      {"polymers enumerate", polymers_enumerate},
      {"polymers weight", polymers_weight},
      {"xi compute", xi_compute},
      {"capture check", capture_check},
      {"clusters lk", clusters_lk},
      {"expansion approx", expansion_approx},
      {"expansion compare", expansion_compare},
      {"expansion logcheck", expansion_logcheck},
      {"expansion bounds", expansion_bounds},
      {"kp check", kp_check},
      {"containers cover", containers_cover},
      {"containers pair", containers_pair},
      {"containers verify", containers_verify},
      {"sample run", sample_run},
      {"sample stats", sample_stats},
  };
  return table;
}

std::string usage() {
  std::string text = "usage: midlayer <command> <action> [flags]\ncommands:\n";
  for (const auto& [name, handler] : handlers()) text += "  " + name + "\n";
  return text;
}

void error_json(std::ostream& err, const char* kind, const std::string& message,
                std::optional<double> estimate = std::nullopt) {
  Json doc{{"error", kind}, {"message", message}};
  if (estimate) doc["estimate"] = *estimate;
  err << doc.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() == 1 && (args[0] == "--help" || args[0] == "-h")) {
    out << usage();
    return kExitOk;
  }
  if (args.size() < 2) {
    err << usage();
    return kExitUsage;
  }
  const std::string name = args[0] + " " + args[1];
  const auto it = handlers().find(name);
  if (it == handlers().end()) {
    err << "unknown command '" << name << "'\n" << usage();
    return kExitUsage;
  }

  Options o;
  CLI::App app{"midlayer " + name};
  app.add_option("--d", o.d, "half-dimension d (graph commands: 2..8)");
  app.add_option("--q", o.q, "number of colors");
  app.add_option("--max-size", o.max_size, "largest admissible polymer (default: N)");
  app.add_option("--max-boundary", o.max_boundary, "largest admissible |N(gamma)|");
  app.add_option("--k", o.k, "series index, truncation t, degree K, or window");
  app.add_option("--psi", o.psi, "approximating-pair threshold");
  app.add_option("--seed", o.seed, "sampler seed");
  app.add_option("--samples", o.samples, "sample count");
  app.add_option("--workers", o.workers, "OpenMP workers (0 = default)");
  app.add_option("--out", o.out, "write output here instead of stdout");
  app.add_option("--precision", o.precision, "interval precision in bits");
  app.add_option("--vertices", o.vertices, "vertex list X, e.g. 0,3,5");
  app.add_option("--coloring", o.coloring, "colors by vertex index, e.g. 1,2,1,...");
  app.add_option("--F", o.f_set, "approximating pair F");
  app.add_option("--S", o.s_set, "approximating pair S");
  app.add_option("--vertex", o.vertex, "single vertex (root, KP target)");
  app.add_option("--partition", o.partition, "principal partition index");
  app.add_option("--xi", o.xi, "constant in g(gamma) for large boundaries");
  app.add_option("--eps-constant", o.eps_constant, "constant in the truncation error bound");
  app.add_option("--method", o.method, "count method: dp, layer, brute");
  app.add_option("--family-cap", o.family_cap, "max polymer families");
  app.add_option("--cluster-cap", o.cluster_cap, "max candidate clusters per term");
  app.add_option("--ursell-cap", o.ursell_cap, "max Ursell graph vertices");
  app.add_option("--max-states", o.max_states, "max frontier states for exact counting");

  std::vector<std::string> rest(args.begin() + 2, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (o.q < 2 || o.q > kMaxColors) throw ParameterError("--q must lie in [2, 16]");
    if (o.d < 2) throw ParameterError("--d must be at least 2");
    if (o.precision < 32 || o.precision > 1 << 16) {
      throw ParameterError("--precision must lie in [32, 65536]");
    }
    if (o.psi < 0) throw ParameterError("--psi must be non-negative");
    if (o.max_size && *o.max_size > 64) throw ParameterError("--max-size must be <= 64");
    if (o.ursell_cap < 1 || o.ursell_cap > kMaxUrsellVertices) {
      throw ParameterError("--ursell-cap must lie in [1, " + std::to_string(kMaxUrsellVertices) +
                           "]");
    }
    set_worker_count(o.workers);
    if (o.out.empty()) {
      it->second(o, out);
    } else {
      std::ofstream file(o.out);
      if (!file) throw ParameterError("cannot open --out file '" + o.out + "'");
      it->second(o, file);
    }
  } catch (const ParameterError& e) {
    error_json(err, "parameter", e.what());
    return kExitInvalid;
  } catch (const ValidationError& e) {
    error_json(err, "validation", e.what());
    return kExitInvalid;
  } catch (const ResourceError& e) {
    error_json(err, "resource", e.what(), e.estimate());
    return kExitResource;
  } catch (const ConsistencyError& e) {
    error_json(err, "consistency", e.what());
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    error_json(err, "parameter", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    error_json(err, "internal", e.what());
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace midlayer
