#include "avgjohn/certificates.hpp"

#include <cmath>
#include <cstdio>

#include "avgjohn/errors.hpp"
#include "avgjohn/nonlinear_gap.hpp"

namespace avgjohn {

double avg_distortion(const EmbeddingMap& f, double p, double omega) {
  return summarize(f, omega, p).distortion;
}

Certificate dim_certificate(const PointConfig& x, const StochasticKernel& k, double p,
                            double constant) {
  if (!(constant > 0.0) || !std::isfinite(constant)) throw ValidationError("K must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must be finite and >= 1");
  Certificate c;
  c.kind = "dimension";
  c.n = x.size();
  c.gap = spectrum(k).gap;
  c.ratio = rayleigh_ratio(k, x, p).ratio;
  c.exponent = c.gap * std::pow(c.ratio, 1.0 / p);
  c.constant = constant;
  c.bound = std::exp(c.exponent / (constant * p));
  c.provenance["p"] = p;
  c.note = "dim >= exp(gap * R_p^(1/p) / (K p))";
  return c;
}

Certificate expander_avg_lower(const Graph& g, double omega, bool sobolev) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  const auto k = graph_kernel(g);
  const auto metric = bfs_metric(g);
  Certificate c;
  c.kind = sobolev ? "expander_sobolev" : "expander";
  c.n = g.size();
  c.gap = spectrum(k).gap;
  const double moment = pair_moment(metric.matrix(), ProbabilityWeights::uniform(g.size()), 2.0 * omega);
  c.ratio = std::sqrt(moment);
  c.exponent = omega;
  c.bound = std::sqrt(c.gap) * c.ratio;
  c.provenance["omega"] = omega;
  c.provenance["moment"] = moment;
  c.note = sobolev ? "hypothesis: W^{1,2} energy bound" : "hypothesis: Lipschitz";
  return c;
}

Certificate general_target_lower(const Graph& g, double omega, double p, double q) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  const auto k = graph_kernel(g);
  const auto metric = bfs_metric(g);
  const auto spec = spectrum(k);
  Certificate c;
  c.kind = "general_target";
  c.advisory = true;
  c.n = g.size();
  c.gap = spec.gap;
  c.exponent = omega;
  const double moment = pair_moment(metric.matrix(), ProbabilityWeights::uniform(g.size()), q * omega);
  c.ratio = std::pow(moment, 1.0 / q);
  const double direct = c.ratio / vector_extrapolation_constant(p, q, spec.gap);
  const double steps = std::ceil(1.0 / spec.gap);
  const double lazy_gap = 1.0 - std::pow((1.0 + spec.lambda2) / 2.0, steps);
  const double walked =
      c.ratio / (vector_extrapolation_constant(p, q, lazy_gap) * std::pow(steps, omega));
  c.bound = std::max(direct, walked);
  c.provenance["p"] = p;
  c.provenance["q"] = q;
  c.provenance["direct"] = direct;
  c.provenance["lazy_power"] = walked;
  c.provenance["steps"] = steps;
  c.provenance["lazy_gap"] = lazy_gap;
  c.note = "explicit extrapolation constants; advisory";
  return c;
}

EnfloReport enflo_cube_check(const PointConfig& f, int k) {
  if (k < 1 || k > 12) throw ValidationError("cube dimension must lie in [1, 12]");
  const std::size_t n = std::size_t{1} << k;
  if (f.size() != n) throw ValidationError("map must have 2^k points");
  if (f.host.is_product() || f.host.p() != 2.0) throw ValidationError("Enflo check needs a Hilbert host");
  EnfloReport r;
  // Sum of squares directly; going through the norm would round sqrt(k)^2.
  auto sq = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < f.host.dim(); ++c) {
      const double d = f.points[a][c] - f.points[b][c];
      acc += d * d;
    }
    return acc;
  };
  for (std::size_t x = 0; x < n; ++x) {
    r.diagonals += sq(x, x ^ (n - 1));
    for (int i = 0; i < k; ++i) r.edges += sq(x ^ (std::size_t{1} << i), x);
  }
  r.pass = r.diagonals <= r.edges * (1.0 + 1e-12);
  return r;
}

Certificate enflo_lower(int k, double eps) {
  if (k < 2 || k > 60) throw ValidationError("cube dimension must lie in [2, 60]");
  if (!(eps > 0.0 && eps <= 0.5)) throw ValidationError("eps must lie in (0, 1/2]");
  // 2^-k sum_j C(k, j) j^{1 + 2 eps}, with log-binomials for large k.
  double moment = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double log_binom = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
    moment += std::exp(log_binom - k * std::log(2.0) + (1.0 + 2.0 * eps) * std::log(j));
  }
  Certificate c;
  c.kind = "hypercube_enflo";
  c.n = std::size_t{1} << k;
  c.gap = 2.0 / k;
  c.ratio = std::sqrt(moment);
  c.exponent = 0.5 + eps;
  c.bound = std::pow(k / 2.0, eps);
  c.provenance["expander_exact"] = std::sqrt(c.gap) * c.ratio;
  c.provenance["sharp_advisory"] = std::pow(static_cast<double>(k), eps);
  c.provenance["k"] = k;
  c.provenance["eps"] = eps;
  c.note = "(k/2)^eps certified; k^eps advisory";
  return c;
}

std::string certificate_csv_header() { return "kind,n,gap,ratio,exponent,K,bound"; }

std::string certificate_csv_row(const Certificate& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g,%.17g,%.17g,%.17g", c.kind.c_str(), c.n,
                c.gap, c.ratio, c.exponent, c.constant, c.bound);
  return buf;
}

}  // namespace avgjohn
