#pragma once

#include <string>
#include <vector>

#include "avgjohn/graph.hpp"
#include "avgjohn/metric.hpp"

namespace avgjohn {

struct EmbeddingMap {
  FiniteMetricSpace domain;
  PointConfig image;  // image.points[i] is the image of domain point i
  ProbabilityWeights weights;

  EmbeddingMap() = default;
  EmbeddingMap(FiniteMetricSpace d, PointConfig img, ProbabilityWeights w);
};

struct DistortionSummary {
  double holder_exponent = 1.0;   // omega
  double average_exponent = 1.0;  // p
  double holder_constant = 0.0;   // max ||f(x) - f(y)|| / d(x, y)^omega
  // (sum mu mu ||f(x) - f(y)||^p / sum mu mu d^{p omega})^{1/p}
  double p_average_ratio = 0.0;
  double distortion = 1.0;  // holder_constant / p_average_ratio
  bool degenerate = false;
};

// Holder constant over all pairs; +inf when two points at distance 0 have
// distinct images.
double holder_constant(const EmbeddingMap& f, double omega);
DistortionSummary summarize(const EmbeddingMap& f, double omega, double p);

struct SelfEmbedResult {
  EmbeddingMap map;
  DistortionSummary summary;
  std::size_t center = 0;  // support point used as origin
  double scale = 0.0;
  double bound = 0.0;      // 2^{(1-w)(1+1/(p w))} / eta(p, w)
};

// Maps a configuration into its own host by z -> c f_omega(z - u) with u the
// support point minimizing sum mu_i ||x_i - u||^{p omega}; c makes the
// p-average of the image equal the (p omega)-average of the input.
SelfEmbedResult snowflake_self_embed(const PointConfig& x, const ProbabilityWeights& mu, double p,
                                     double omega);

struct FrechetSpread {
  PointConfig frechet;  // rows of d in l_inf^n
  Vector mean;          // sum mu_w j(w)
  Vector radius;        // ||j(x) - mean||_inf
  double moment = 0.0;  // (sum mu_x radius_x^q)^{1/q}
};

FrechetSpread frechet_spread(const FiniteMetricSpace& m, const ProbabilityWeights& mu, double q);
// Indices with radius <= tau * moment.
std::vector<std::size_t> a_tau_set(const FrechetSpread& s, double tau);

struct LineEmbedResult {
  EmbeddingMap map;  // image in R (l_2^1)
  Vector raw;        // ||j(x) - mean||_inf before rescaling
  double scale = 0.0;
  DistortionSummary summary;
};

// x -> ||j(x) - sum mu j||_inf, rescaled so the q-average matches the metric.
// A constant raw map is flagged degenerate with infinite distortion.
LineEmbedResult line_embed(const FiniteMetricSpace& m, const ProbabilityWeights& mu, double q);

struct ExponentChangeResult {
  EmbeddingMap map;
  DistortionSummary summary;  // measured at the new exponent
  double input_distortion = 0.0;
  std::string method;
  double delta = 0.0;  // I_p / I_q of the Frechet spread
  double tau = 0.0;
  double advisory = 0.0;
  double retained_mass = 1.0;
};

// Trades a p-average bound for a q-average bound, q >= p. Two candidates: the
// map rescaled by 2/delta and the line embedding; the one with smaller
// measured q-average distortion is returned.
ExponentChangeResult raise_exponent(const EmbeddingMap& f, double p, double q);
// q <= p: restricts the measure to A_8 and rescales.
ExponentChangeResult lower_exponent(const EmbeddingMap& f, double p, double q);
// D + q / (p ln(e + q / (p D))).
double raise_advisory(double d, double p, double q);

struct HilbertRealization {
  PointConfig points;  // l_2^r
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double max_error = 0.0;  // max |realized - d^{p/2}|
};

// Euclidean points with ||y_i - y_j|| = ||x_i - x_j||_p^{p/2} via double
// centering, p in [1, 2].
HilbertRealization hilbert_realize_snowflake(const PointConfig& x);
// Same, for any metric whose power d^{2 omega} is of negative type.
HilbertRealization hilbert_realize(const FiniteMetricSpace& m, double omega);

struct TransferResult {
  EmbeddingMap map;
  DistortionSummary summary;  // omega-Holder, q-average
  double input_distortion = 0.0;
  double beta = 0.0;
  double advisory = 0.0;
  std::vector<std::string> steps;
};

// Starts from f (p-average, Lipschitz) and produces an omega-Holder map with
// q-average control into the same host.
TransferResult transfer_snowflake(const EmbeddingMap& f, double p, double q, double omega);
// Starts from the isometric Frechet embedding.
TransferResult transfer_snowflake(const FiniteMetricSpace& m, const ProbabilityWeights& mu,
                                  double p, double q, double omega);
double transfer_advisory(double d, double p, double q, double omega);

struct SlEmbedding {
  CayleyGroup group;
  FiniteMetricSpace word_metric;
  EmbeddingMap map;
  double scale = 0.0;
  double max_displacement = 0.0;   // max over elements and generators
  double displacement_bound = 0.0; // scale * 2 sqrt(k)
  double average_ratio = 0.0;      // mean image distance / mean word distance
  double distortion = 0.0;         // 1-average, Lipschitz
  bool injective = false;
};

// X -> scale (cos(2 pi x_jl / q), sin(2 pi x_jl / q))_{j,l} in l_2^{2k^2},
// scale = c k ln q / ln k.
SlEmbedding sl_character_embed(int k, int q, double c = 1.0);

}  // namespace avgjohn
