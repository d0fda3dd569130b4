#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "avgjohn/certificates.hpp"
#include "avgjohn/embeddings.hpp"
#include "avgjohn/graph.hpp"
#include "avgjohn/markov.hpp"
#include "avgjohn/metric.hpp"
#include "avgjohn/nonlinear_gap.hpp"

namespace avgjohn::io {

using json = nlohmann::json;

// Parses JSON text; syntax errors become ValidationError with line and column.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);

// Numbers: finite doubles, or the strings "inf" / "-inf".
json number(double v);
double to_number(const json& j, const std::string& what);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& what);

json to_json(const NormedHost& h);
NormedHost host_from_json(const json& j);

json to_json(const FiniteMetricSpace& m);
FiniteMetricSpace metric_from_json(const json& j);

json to_json(const PointConfig& c);
PointConfig config_from_json(const json& j);

json to_json(const ProbabilityWeights& w);
ProbabilityWeights weights_from_json(const json& j);

json to_json(const StochasticKernel& k);
StochasticKernel kernel_from_json(const json& j);

json to_json(const Graph& g);
Graph graph_from_json(const json& j);
// {"family": "hypercube" | "cycle" | "complete" | "random_regular" | "cayley_sl", ...}
Graph graph_from_builder(const json& j);

json to_json(const Spectrum& s);
json to_json(const RayleighReport& r);
json to_json(const ExtrapolationReport& r);
json to_json(const DistortionSummary& s);
json to_json(const EmbeddingMap& f);
EmbeddingMap embedding_from_json(const json& j);
json to_json(const Certificate& c);

}  // namespace avgjohn::io
