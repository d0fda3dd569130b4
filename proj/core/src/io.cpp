#include "avgjohn/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "avgjohn/errors.hpp"

namespace avgjohn::io {

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(what + " is missing \"" + key + "\"");
  return *it;
}

std::size_t to_size(const json& j, const std::string& what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ValidationError(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) throw ValidationError(what + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(to_number(e, what));
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

std::vector<std::string> labels_from_json(const json& j) {
  std::vector<std::string> out;
  auto it = j.find("labels");
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) throw ValidationError("labels must be an array of strings");
  for (const auto& e : *it) {
    if (!e.is_string()) throw ValidationError("labels must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ValidationError(source + ": malformed JSON at " + location(text, at));
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), path);
}

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double to_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ValidationError(what + " must be a number");
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(number(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r, what));
  if (rows.empty()) return {};
  return Matrix::from_rows(rows);
}

json to_json(const NormedHost& h) {
  if (h.is_product())
    return {{"kind", "lp_product"}, {"p", number(h.p())}, {"copies", h.copies()},
            {"inner", to_json(*h.inner())}};
  return {{"kind", "lp"}, {"p", number(h.p())}, {"dim", h.dim()}};
}

NormedHost host_from_json(const json& j) {
  const auto kind = field(j, "kind", "host");
  if (!kind.is_string()) throw ValidationError("host kind must be a string");
  const double p = to_number(field(j, "p", "host"), "host p");
  if (kind == "lp") return NormedHost::lp(p, to_size(field(j, "dim", "host"), "host dim"));
  if (kind == "lp_product")
    return NormedHost::lp_product(p, to_size(field(j, "copies", "host"), "host copies"),
                                  host_from_json(field(j, "inner", "host")));
  throw ValidationError("unknown host kind");
}

json to_json(const FiniteMetricSpace& m) {
  json out = {{"n", m.size()}, {"d", to_json(m.matrix())}};
  if (!m.labels().empty()) out["labels"] = m.labels();
  return out;
}

FiniteMetricSpace metric_from_json(const json& j) {
  const std::size_t n = to_size(field(j, "n", "metric"), "metric n");
  Matrix d = matrix_from_json(field(j, "d", "metric"), "metric d");
  if (d.rows() != n || d.cols() != n) throw ValidationError("metric d must be n x n");
  return FiniteMetricSpace(std::move(d), labels_from_json(j));
}

json to_json(const PointConfig& c) {
  json pts = json::array();
  for (const auto& x : c.points) pts.push_back(vector_to_json(x));
  json out = {{"host", to_json(c.host)}, {"points", pts}};
  if (!c.labels.empty()) out["labels"] = c.labels;
  return out;
}

PointConfig config_from_json(const json& j) {
  NormedHost host = host_from_json(field(j, "host", "config"));
  const auto& pts = field(j, "points", "config");
  if (!pts.is_array()) throw ValidationError("config points must be an array");
  std::vector<Vector> points;
  for (const auto& p : pts) points.push_back(vector_from_json(p, "config point"));
  return PointConfig(std::move(host), std::move(points), labels_from_json(j));
}

json to_json(const ProbabilityWeights& w) { return vector_to_json(w.values()); }

ProbabilityWeights weights_from_json(const json& j) {
  return ProbabilityWeights(vector_from_json(j, "weights"));
}

json to_json(const StochasticKernel& k) {
  return {{"a", to_json(k.matrix())}, {"pi", to_json(k.pi())}};
}

StochasticKernel kernel_from_json(const json& j) {
  return StochasticKernel(matrix_from_json(field(j, "a", "kernel"), "kernel a"),
                          weights_from_json(field(j, "pi", "kernel")));
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.size()}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
  const std::size_t n = to_size(field(j, "n", "graph"), "graph n");
  const auto& arr = field(j, "edges", "graph");
  if (!arr.is_array()) throw ValidationError("graph edges must be an array");
  std::vector<Edge> edges;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("each edge must be a pair");
    edges.emplace_back(to_size(e[0], "edge endpoint"), to_size(e[1], "edge endpoint"));
  }
  return Graph(n, std::move(edges));
}

Graph graph_from_builder(const json& j) {
  const auto& fam = field(j, "family", "graph builder");
  if (!fam.is_string()) throw ValidationError("family must be a string");
  const auto f = fam.get<std::string>();
  auto sz = [&](const char* key) { return to_size(field(j, key, "graph builder"), key); };
  if (f == "hypercube") return hypercube(static_cast<int>(sz("k")));
  if (f == "cycle") return cycle(sz("n"));
  if (f == "complete") return complete(sz("n"));
  if (f == "random_regular") {
    const std::size_t seed = j.contains("seed") ? sz("seed") : 0;
    return random_regular(sz("n"), sz("degree"), seed);
  }
  if (f == "cayley_sl") return cayley_sl(static_cast<int>(sz("k")), static_cast<int>(sz("q"))).graph;
  throw ValidationError("unknown graph family " + f);
}

json to_json(const Spectrum& s) {
  return {{"eigenvalues", vector_to_json(s.eigenvalues)},
          {"lambda2", number(s.lambda2)},
          {"gap", number(s.gap)},
          {"abs_gap", number(s.abs_gap)}};
}

json to_json(const RayleighReport& r) {
  return {{"numerator", number(r.numerator)},
          {"denominator", number(r.denominator)},
          {"ratio", number(r.ratio)},
          {"p", number(r.p)}};
}

json to_json(const ExtrapolationReport& r) {
  return {{"pass", r.pass},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"constant", number(r.constant)},
          {"branch", r.branch}};
}

json to_json(const DistortionSummary& s) {
  return {{"holder_exponent", number(s.holder_exponent)},
          {"average_exponent", number(s.average_exponent)},
          {"holder_constant", number(s.holder_constant)},
          {"p_average_ratio", number(s.p_average_ratio)},
          {"distortion", number(s.distortion)},
          {"degenerate", s.degenerate}};
}

json to_json(const EmbeddingMap& f) {
  return {{"domain", to_json(f.domain)}, {"weights", to_json(f.weights)}, {"image", to_json(f.image)}};
}

EmbeddingMap embedding_from_json(const json& j) {
  auto domain = metric_from_json(field(j, "domain", "embedding"));
  auto image = config_from_json(field(j, "image", "embedding"));
  auto weights = j.contains("weights") ? weights_from_json(j.at("weights"))
                                       : ProbabilityWeights::uniform(domain.size());
  return EmbeddingMap(std::move(domain), std::move(image), std::move(weights));
}

json to_json(const Certificate& c) {
  json prov = json::object();
  for (const auto& [k, v] : c.provenance) prov[k] = number(v);
  return {{"kind", c.kind},   {"n", c.n},
          {"gap", number(c.gap)},
          {"ratio", number(c.ratio)},
          {"exponent", number(c.exponent)},
          {"parametric_constant", number(c.constant)},
          {"bound", number(c.bound)},
          {"advisory", c.advisory},
          {"provenance", prov},
          {"note", c.note}};
}

}  // namespace avgjohn::io
