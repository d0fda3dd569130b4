#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "avgjohn/boost.hpp"
#include "avgjohn/certificates.hpp"
#include "avgjohn/embeddings.hpp"
#include "avgjohn/errors.hpp"
#include "avgjohn/graph.hpp"
#include "avgjohn/markov.hpp"
#include "avgjohn/mazur.hpp"
#include "avgjohn/metric.hpp"
#include "avgjohn/nonlinear_gap.hpp"
#include "avgjohn/version.hpp"

namespace avgjohn::cli {

using io::json;
using io::number;

namespace {

json vec_json(const Vector& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ValidationError(std::string("missing required flag --") + flag);
  return *v;
}

// The single input document, or an empty object when no --input was given.
json input_doc(const RunOptions& o) {
  if (o.inputs.empty()) return json::object();
  if (o.inputs.size() > 1) throw ValidationError(o.subcommand + " takes a single --input");
  json doc = io::read_file(o.inputs.front());
  if (!doc.is_object()) throw ValidationError(o.inputs.front() + ": top level must be an object");
  return doc;
}

json builder_from_flags(const RunOptions& o) {
  json b = {{"family", *o.family}};
  if (o.k) b["k"] = *o.k;
  if (o.n) b["n"] = *o.n;
  if (o.degree) b["degree"] = *o.degree;
  if (o.field) b["q"] = *o.field;
  if (*o.family == "random_regular") b["seed"] = o.seed;
  return b;
}

std::optional<Graph> find_graph(const json& doc, const RunOptions& o) {
  if (doc.contains("graph")) {
    const auto& g = doc.at("graph");
    return g.contains("family") ? io::graph_from_builder(g) : io::graph_from_json(g);
  }
  if (doc.contains("edges")) return io::graph_from_json(doc);
  if (doc.contains("family")) return io::graph_from_builder(doc);
  if (o.family) return io::graph_from_builder(builder_from_flags(o));
  return std::nullopt;
}

Graph need_graph(const json& doc, const RunOptions& o) {
  auto g = find_graph(doc, o);
  if (!g) throw ValidationError("no graph given: use --family or an input with graph/edges/family");
  return *g;
}

std::optional<StochasticKernel> find_kernel(const json& doc, const RunOptions& o) {
  if (doc.contains("kernel")) return io::kernel_from_json(doc.at("kernel"));
  if (doc.contains("a")) return io::kernel_from_json(doc);
  if (auto g = find_graph(doc, o)) return graph_kernel(*g);
  return std::nullopt;
}

StochasticKernel need_kernel(const json& doc, const RunOptions& o) {
  auto k = find_kernel(doc, o);
  if (!k) throw ValidationError("no kernel given: use --family or an input with kernel/graph");
  return *k;
}

// Cube vertices as 0/1 points, matching hypercube(k) vertex numbering.
PointConfig cube_points(int k, double p) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<Vector> pts(n, Vector(static_cast<std::size_t>(k), 0.0));
  for (std::size_t v = 0; v < n; ++v)
    for (int b = 0; b < k; ++b) pts[v][static_cast<std::size_t>(b)] = (v >> b) & 1U ? 1.0 : 0.0;
  return PointConfig(NormedHost::lp(p, static_cast<std::size_t>(k)), std::move(pts));
}

FiniteMetricSpace need_metric(const json& doc, const RunOptions& o) {
  if (doc.contains("metric")) return io::metric_from_json(doc.at("metric"));
  if (doc.contains("d")) return io::metric_from_json(doc);
  if (doc.contains("config")) return config_metric(io::config_from_json(doc.at("config")));
  return bfs_metric(need_graph(doc, o));
}

ProbabilityWeights weights_or_uniform(const json& doc, std::size_t n) {
  if (doc.contains("weights")) {
    auto w = io::weights_from_json(doc.at("weights"));
    if (w.size() != n) throw ValidationError("weights size does not match the point count");
    return w;
  }
  return ProbabilityWeights::uniform(n);
}

std::string eigen_method_name(std::size_t n) {
  return n <= kJacobiMaxOrder ? "jacobi" : "tridiagonal";
}

json cmd_gen_graph(const RunOptions& o) {
  const json doc = input_doc(o);
  Graph g = need_graph(doc, o);
  return {{"graph", io::to_json(g)},
          {"n", g.size()},
          {"edge_count", g.edges().size()},
          {"degree", g.degree()},
          {"connected", is_connected(g)}};
}

json cmd_spectrum(const RunOptions& o) {
  const json doc = input_doc(o);
  StochasticKernel k = need_kernel(doc, o);
  json r = io::to_json(spectrum(k));
  r["n"] = k.size();
  r["eigensolver"] = eigen_method_name(k.size());
  return r;
}

json cmd_gamma_est(const RunOptions& o) {
  const json doc = input_doc(o);
  StochasticKernel k = need_kernel(doc, o);
  const double p = o.p.value_or(2.0);
  const double host_p = o.host_p.value_or(p);
  const auto dim = static_cast<std::size_t>(o.dim.value_or(2));
  if (o.budget < 1) throw ValidationError("--budget must be at least 1");
  const NormedHost host = NormedHost::lp(host_p, dim);
  auto res = gamma_lower_bound_search(k, host, p, o.budget, o.seed);
  const Spectrum s = spectrum(k);
  json r = {{"lower_bound", io::to_json(res.best)},
            {"witness", io::to_json(res.witness)},
            {"starts", res.starts},
            {"accepted_moves", res.accepted_moves},
            {"host", io::to_json(host)},
            {"gap", number(s.gap)}};
  if (host_p == 2.0 && p == 2.0) r["euclidean_exact"] = number(gamma_euclidean_exact(k));
  // Sup-level lazy comparison, reported only: both sides are search estimates.
  const double lazy_abs = absolute_rayleigh(lazy(k), res.witness, res.witness, p).ratio;
  const double lazy_cap = std::pow(2.0, 2.0 * p + 1.0) * res.best.ratio;
  r["lazy_advisory"] = {{"absolute_lazy_on_witness", number(lazy_abs)},
                        {"cap", number(lazy_cap)},
                        {"consistent", lazy_abs <= lazy_cap}};
  return r;
}

json cmd_mtype(const RunOptions& o) {
  const json doc = input_doc(o);
  StochasticKernel k = need_kernel(doc, o);
  FiniteMetricSpace m = need_metric(doc, o);
  if (m.size() != k.size()) throw ValidationError("metric and kernel sizes differ");
  const double p = o.p.value_or(2.0);
  const int steps = static_cast<int>(o.steps.value_or(1));
  return {{"ratio", number(markov_type_ratio(k, m, p, steps))},
          {"p", number(p)},
          {"steps", steps},
          {"n", k.size()}};
}

json cmd_extrapolate(const RunOptions& o) {
  const json doc = input_doc(o);
  StochasticKernel k = need_kernel(doc, o);
  if (doc.contains("config")) {
    const PointConfig x = io::config_from_json(doc.at("config"));
    const double q = o.target_q.value_or(2.0);
    json r = io::to_json(vector_extrapolation_bound(k, x, q));
    r["mode"] = "vector";
    r["p"] = number(x.host.p());
    r["q"] = number(q);
    return r;
  }
  Vector s;
  std::string source = "second_eigenvector";
  if (doc.contains("vector")) {
    for (const auto& v : doc.at("vector")) s.push_back(io::to_number(v, "vector entry"));
    source = "input";
  } else {
    s = second_eigenvector(k);
  }
  const double beta = o.beta.value_or(2.0);
  json r = io::to_json(scalar_extrapolation_check(k, s, beta));
  r["mode"] = "scalar";
  r["beta"] = number(beta);
  r["vector_source"] = source;
  return r;
}

json center_json(const CenterSolution& c) {
  return {{"center", vec_json(c.center)},
          {"residual", number(c.residual)},
          {"scale", number(c.scale)},
          {"iterations", c.iterations},
          {"starts", c.starts}};
}

json boost_json(const BoostResult& b) {
  return {{"solution", center_json(b.solution)},
          {"y", io::to_json(b.y)},
          {"p", number(b.p)},
          {"q", number(b.q)},
          {"centering", number(b.centering)},
          {"centered", b.centered},
          {"sandwich", b.sandwich},
          {"worst_lower_ratio", number(b.worst_lower_ratio)},
          {"worst_upper_ratio", number(b.worst_upper_ratio)}};
}

json cmd_boost(const RunOptions& o) {
  const json doc = input_doc(o);
  if (!doc.contains("config")) throw ValidationError("boost needs an input with a config");
  const PointConfig x = io::config_from_json(doc.at("config"));
  const double p = o.p.value_or(1.0);
  const double q = o.target_q.value_or(2.0);
  if (auto k = find_kernel(doc, o)) {
    if (k->size() != x.size()) throw ValidationError("kernel and config sizes differ");
    auto w = extrapolation_witness_check(*k, x, p, q, o.tol, o.seed);
    return {{"mode", "witness"},
            {"pass", w.pass},
            {"rq_x", number(w.rq_x)},
            {"rp_y", number(w.rp_y)},
            {"lhs", number(w.lhs)},
            {"root_ratio", number(w.root_ratio)},
            {"boost", boost_json(w.boost)}};
  }
  const auto pi = weights_or_uniform(doc, x.size());
  json r = boost_json(boost_config(pi, x, p, q, o.tol, o.seed));
  r["mode"] = "weights";
  return r;
}

json cmd_self_embed(const RunOptions& o) {
  const json doc = input_doc(o);
  if (!doc.contains("config")) throw ValidationError("self-embed needs an input with a config");
  const PointConfig x = io::config_from_json(doc.at("config"));
  const double p = o.p.value_or(x.host.p());
  const double omega = need(o.omega, "omega");
  auto res = snowflake_self_embed(x, weights_or_uniform(doc, x.size()), p, omega);
  return {{"summary", io::to_json(res.summary)},
          {"center", res.center},
          {"scale", number(res.scale)},
          {"bound", number(res.bound)},
          {"within_bound", res.summary.holder_constant <= res.bound + 1e-9},
          {"image", io::to_json(res.map.image)}};
}

json cmd_transfer(const RunOptions& o) {
  const json doc = input_doc(o);
  const double p = need(o.p, "p");
  const double q = need(o.target_q, "q");
  const double omega = need(o.omega, "omega");
  TransferResult res;
  if (doc.contains("embedding")) {
    res = transfer_snowflake(io::embedding_from_json(doc.at("embedding")), p, q, omega);
  } else {
    FiniteMetricSpace m = need_metric(doc, o);
    res = transfer_snowflake(m, weights_or_uniform(doc, m.size()), p, q, omega);
  }
  return {{"summary", io::to_json(res.summary)},
          {"input_distortion", number(res.input_distortion)},
          {"beta", number(res.beta)},
          {"advisory", number(res.advisory)},
          {"steps", res.steps},
          {"image", io::to_json(res.map.image)}};
}

json cmd_line_embed(const RunOptions& o) {
  const json doc = input_doc(o);
  FiniteMetricSpace m = need_metric(doc, o);
  const double q = o.target_q.value_or(1.0);
  auto res = line_embed(m, weights_or_uniform(doc, m.size()), q);
  return {{"summary", io::to_json(res.summary)},
          {"raw", vec_json(res.raw)},
          {"scale", number(res.scale)},
          {"image", io::to_json(res.map.image)}};
}

json cmd_certify_dim(const RunOptions& o) {
  const json doc = input_doc(o);
  StochasticKernel k = need_kernel(doc, o);
  const double p = o.p.value_or(1.0);
  PointConfig x;
  if (doc.contains("config")) {
    x = io::config_from_json(doc.at("config"));
  } else if (o.family && *o.family == "hypercube" && o.k) {
    x = cube_points(static_cast<int>(*o.k), p);
  } else {
    throw ValidationError("certify-dim needs a config, or --family hypercube --k K");
  }
  if (x.size() != k.size()) throw ValidationError("kernel and config sizes differ");
  return {{"certificate", io::to_json(dim_certificate(x, k, p, o.constant))}};
}

json cmd_expander_bound(const RunOptions& o) {
  const json doc = input_doc(o);
  Graph g = need_graph(doc, o);
  const double omega = need(o.omega, "omega");
  if (o.general) {
    const double p = need(o.p, "p");
    const double q = need(o.target_q, "q");
    return {{"certificate", io::to_json(general_target_lower(g, omega, p, q))}};
  }
  return {{"certificate", io::to_json(expander_avg_lower(g, omega, o.sobolev))}};
}

json cmd_hypercube_enflo(const RunOptions& o) {
  const json doc = input_doc(o);
  const int k = static_cast<int>(need(o.k, "k"));
  const PointConfig f =
      doc.contains("config") ? io::config_from_json(doc.at("config")) : cube_points(k, 2.0);
  auto rep = enflo_cube_check(f, k);
  json r = {{"pass", rep.pass},
            {"diagonals", number(rep.diagonals)},
            {"edges", number(rep.edges)},
            {"map", doc.contains("config") ? "input" : "identity"}};
  if (o.eps) r["certificate"] = io::to_json(enflo_lower(k, *o.eps));
  return r;
}

json cmd_slk(const RunOptions& o) {
  const int k = static_cast<int>(need(o.k, "k"));
  const int q = static_cast<int>(need(o.q, "q"));
  auto e = sl_character_embed(k, q, o.c.value_or(1.0));
  return {{"order", e.group.order()},
          {"generators", e.group.generators.size()},
          {"degree", e.group.graph.degree()},
          {"diameter", number(e.word_metric.diameter())},
          {"injective", e.injective},
          {"scale", number(e.scale)},
          {"max_displacement", number(e.max_displacement)},
          {"displacement_bound", number(e.displacement_bound)},
          {"average_ratio", number(e.average_ratio)},
          {"distortion", number(e.distortion)}};
}

json cmd_eta(const RunOptions& o) {
  const double p = need(o.p, "p");
  const double omega = need(o.omega, "omega");
  std::string regime = "middle";
  if (p * omega >= 1.0) regime = "closed_form_high";
  else if (p <= 1.0) regime = "closed_form_low";
  json r = {{"eta", number(eta(p, omega))}, {"regime", regime}};
  if (o.sigma) r["profile"] = number(eta_profile(p, omega, *o.sigma));
  return r;
}

json cmd_psi(const RunOptions& o) {
  const double rho = need(o.rho, "rho");
  const double omega = need(o.omega, "omega");
  return {{"psi", number(psi_omega(rho, omega))}};
}

// Aggregates existing reports, or runs a small fixed suite when none are given.
json cmd_report(const RunOptions& o) {
  json rows = json::array();
  if (!o.inputs.empty()) {
    for (const auto& path : o.inputs) {
      json rep = io::read_file(path);
      if (!rep.is_object() || !rep.contains("spec") || !rep.contains("result"))
        throw ValidationError(path + ": not an " + std::string(kToolName) + " report");
      rows.push_back({{"source", path},
                      {"subcommand", rep.at("spec").value("subcommand", "")},
                      {"result", rep.at("result")}});
    }
    return {{"mode", "aggregate"}, {"reports", rows}};
  }
  auto add = [&](const std::string& name, json result) {
    rows.push_back({{"name", name}, {"result", std::move(result)}});
  };
  add("eta_p2_w0.5", {{"eta", number(eta(2.0, 0.5))}});
  add("spectrum_complete_3", io::to_json(spectrum(graph_kernel(complete(3)))));
  add("expander_bound_cube_4", io::to_json(expander_avg_lower(hypercube(4), 0.5)));
  add("certify_dim_cube_3", io::to_json(dim_certificate(cube_points(3, 1.0),
                                                        graph_kernel(hypercube(3)), 1.0, 1.0)));
  add("enflo_lower_k8_eps0.25", io::to_json(enflo_lower(8, 0.25)));
  const auto g = cayley_sl(2, 3);
  add("slk_2_3", {{"order", g.order()}, {"degree", g.graph.degree()}});
  return {{"mode", "suite"}, {"reports", rows}};
}

using Handler = std::function<json(const RunOptions&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"gen-graph", cmd_gen_graph},       {"spectrum", cmd_spectrum},
      {"gamma-est", cmd_gamma_est},       {"mtype", cmd_mtype},
      {"extrapolate", cmd_extrapolate},   {"boost", cmd_boost},
      {"self-embed", cmd_self_embed},     {"transfer", cmd_transfer},
      {"line-embed", cmd_line_embed},     {"certify-dim", cmd_certify_dim},
      {"expander-bound", cmd_expander_bound}, {"hypercube-enflo", cmd_hypercube_enflo},
      {"slk", cmd_slk},                   {"report", cmd_report},
      {"eta", cmd_eta},                   {"psi", cmd_psi}};
  return table;
}

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), os);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : v) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      v = quoted + "\"";
    }
    os << path << ',' << v << '\n';
  }
}

}  // namespace

json spec_json(const RunOptions& o) {
  json args = {{"seed", o.seed}, {"tol", number(o.tol)}, {"budget", o.budget},
               {"format", o.format}, {"constant", number(o.constant)}};
  auto put = [&](const char* key, const auto& v) {
    if (v) args[key] = *v;
  };
  auto put_num = [&](const char* key, const std::optional<double>& v) {
    if (v) args[key] = number(*v);
  };
  put("family", o.family);
  put("k", o.k);
  put("n", o.n);
  put("degree", o.degree);
  put("field", o.field);
  put("q", o.q);
  put("steps", o.steps);
  put("dim", o.dim);
  put_num("p", o.p);
  put_num("target_q", o.target_q);
  put_num("omega", o.omega);
  put_num("beta", o.beta);
  put_num("eps", o.eps);
  put_num("sigma", o.sigma);
  put_num("rho", o.rho);
  put_num("c", o.c);
  put_num("host_p", o.host_p);
  if (o.sobolev) args["sobolev"] = true;
  if (o.general) args["general"] = true;
  json inputs = json::array();
  for (const auto& path : o.inputs) inputs.push_back({{"path", path}, {"content", io::read_file(path)}});
  return {{"subcommand", o.subcommand}, {"args", args}, {"inputs", inputs}};
}

json execute(const RunOptions& o) {
  const auto& table = handlers();
  auto it = table.find(o.subcommand);
  if (it == table.end()) throw ValidationError("unknown subcommand: " + o.subcommand);
  json result = it->second(o);
  json provenance = {{"tool", kToolName},
                     {"version", kVersion},
                     {"rng", "mt19937_64"},
                     {"number_format", "shortest round-trip; inf/nan as strings"}};
  return {{"spec", spec_json(o)}, {"result", std::move(result)}, {"provenance", provenance}};
}

std::string to_csv(const json& report) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(report, "", os);
  return os.str();
}

}  // namespace avgjohn::cli
