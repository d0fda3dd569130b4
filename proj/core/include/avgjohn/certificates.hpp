#pragma once

#include <map>
#include <string>

#include "avgjohn/embeddings.hpp"
#include "avgjohn/graph.hpp"
#include "avgjohn/markov.hpp"
#include "avgjohn/metric.hpp"

namespace avgjohn {

struct Certificate {
  std::string kind;
  std::size_t n = 0;
  double gap = 0.0;
  double ratio = 0.0;
  double exponent = 0.0;   // E
  double constant = 1.0;   // K
  double bound = 0.0;
  bool advisory = false;
  std::map<std::string, double> provenance;  // ordered for stable output
  std::string note;
};

// p-average distortion of an omega-Holder map:
// L * (sum mu mu d^{p omega} / sum mu mu ||f(x) - f(y)||^p)^{1/p}.
double avg_distortion(const EmbeddingMap& f, double p, double omega);

// For points x_i of a normed space with kernel k: E = gap * R_p^{1/p} and a
// dimension lower bound exp(E / (K p)).
Certificate dim_certificate(const PointConfig& x, const StochasticKernel& k, double p,
                            double constant = 1.0);

// Lower bound on the quadratic average distortion of the omega-snowflake of a
// regular graph into Hilbert space: sqrt(gap) (n^-2 sum d^{2 omega})^{1/2}.
// The Sobolev flag keeps the value and records the W^{1,2} reading.
Certificate expander_avg_lower(const Graph& g, double omega, bool sobolev = false);

// Lower bound for q-average embeddings of the omega-snowflake into l_p from
// the explicit extrapolation constants, applied to A and to
// ((I + A) / 2)^s with s = ceil(1 / gap). Marked advisory.
Certificate general_target_lower(const Graph& g, double omega, double p, double q);

struct EnfloReport {
  bool pass = false;
  double diagonals = 0.0;  // sum_x ||f(x) - f(x + 1...1)||^2
  double edges = 0.0;      // sum_x sum_i ||f(x + e_i) - f(x)||^2
};

// f must be indexed by the 2^k bit patterns of the hypercube.
EnfloReport enflo_cube_check(const PointConfig& f, int k);

// Certified (k/2)^eps for the (1/2 + eps)-snowflake of the k-cube; the exact
// moment value and the sharp k^eps are recorded in the provenance.
Certificate enflo_lower(int k, double eps);

// Ordered CSV columns: kind,n,gap,ratio,exponent,K,bound.
std::string certificate_csv_header();
std::string certificate_csv_row(const Certificate& c);

}  // namespace avgjohn
