#include "avgjohn/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "avgjohn/errors.hpp"
#include "avgjohn/mazur.hpp"

namespace avgjohn {

namespace {

double powd(double d, double s) { return d == 0.0 ? 0.0 : std::pow(d, s); }

double diff_norm(const NormedHost& host, const Vector& a, const Vector& b, Vector& scratch) {
  scratch.resize(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) scratch[c] = a[c] - b[c];
  return host.norm(scratch.data());
}

PointConfig scaled(const PointConfig& img, double s) {
  PointConfig out = img;
  for (auto& x : out.points)
    for (double& v : x) v *= s;
  return out;
}

std::size_t support_size(const ProbabilityWeights& w) { return w.support().size(); }

// Values on a line placed along the first axis of host.
PointConfig on_axis(const NormedHost& host, const Vector& values) {
  std::vector<Vector> pts(values.size(), Vector(host.dim(), 0.0));
  for (std::size_t i = 0; i < values.size(); ++i) pts[i][0] = values[i];
  return PointConfig(host, std::move(pts));
}

}  // namespace

EmbeddingMap::EmbeddingMap(FiniteMetricSpace d, PointConfig img, ProbabilityWeights w)
    : domain(std::move(d)), image(std::move(img)), weights(std::move(w)) {
  if (image.size() != domain.size() || weights.size() != domain.size())
    throw ValidationError("embedding domain, image and weights must have the same size");
}

double holder_constant(const EmbeddingMap& f, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  const std::size_t n = f.domain.size();
  Vector scratch;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double img = diff_norm(f.image.host, f.image.points[i], f.image.points[j], scratch);
      if (img == 0.0) continue;
      const double d = f.domain(i, j);
      if (d == 0.0) return kInf;
      best = std::max(best, img / std::pow(d, omega));
    }
  return best;
}

DistortionSummary summarize(const EmbeddingMap& f, double omega, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("average exponent must be positive");
  DistortionSummary s;
  s.holder_exponent = omega;
  s.average_exponent = p;
  s.holder_constant = holder_constant(f, omega);
  const double dom = pair_moment(f.domain.matrix(), f.weights, p * omega);
  const double img = pair_moment(distance_matrix(f.image), f.weights, p);
  if (dom == 0.0) {
    s.p_average_ratio = img == 0.0 ? 1.0 : kInf;
    s.distortion = 1.0;
    s.degenerate = true;
    return s;
  }
  s.p_average_ratio = std::pow(img / dom, 1.0 / p);
  if (s.p_average_ratio == 0.0) {
    s.distortion = kInf;
    s.degenerate = true;
  } else {
    s.distortion = s.holder_constant / s.p_average_ratio;
  }
  return s;
}

SelfEmbedResult snowflake_self_embed(const PointConfig& x, const ProbabilityWeights& mu, double p,
                                     double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("p must be positive and finite");
  const std::size_t n = x.size();
  if (mu.size() != n) throw ValidationError("weights length does not match configuration");
  const Matrix d = distance_matrix(x);
  const double pw = p * omega;

  SelfEmbedResult out;
  double best = kInf;
  for (std::size_t u : mu.support()) {
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) cost += mu[j] * powd(d(j, u), pw);
    if (cost < best) {
      best = cost;
      out.center = u;
    }
  }
  out.bound = omega == 1.0 ? 1.0
                           : std::pow(2.0, (1.0 - omega) * (1.0 + 1.0 / pw)) / eta(p, omega);

  const Vector& u = x.points[out.center];
  std::vector<Vector> fx(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(x.host.dim());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = x.points[i][c] - u[c];
    fx[i] = f_omega(x.host, v, omega);
  }
  PointConfig raw(x.host, fx, x.labels);
  const double dom = pair_moment(d, mu, pw);
  const double img = pair_moment(distance_matrix(raw), mu, p);
  FiniteMetricSpace domain = FiniteMetricSpace::trusted(d, x.labels);
  if (dom == 0.0 || img == 0.0) {
    PointConfig zero(x.host, std::vector<Vector>(n, Vector(x.host.dim(), 0.0)), x.labels);
    out.map = EmbeddingMap(std::move(domain), std::move(zero), mu);
    out.scale = 0.0;
    out.summary.holder_exponent = omega;
    out.summary.average_exponent = p;
    out.summary.distortion = 1.0;
    out.summary.p_average_ratio = 1.0;
    out.summary.degenerate = true;
    return out;
  }
  out.scale = std::pow(dom / img, 1.0 / p);
  out.map = EmbeddingMap(std::move(domain), scaled(raw, out.scale), mu);
  out.summary = summarize(out.map, omega, p);
  return out;
}

FrechetSpread frechet_spread(const FiniteMetricSpace& m, const ProbabilityWeights& mu, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must be finite and >= 1");
  const std::size_t n = m.size();
  if (mu.size() != n) throw ValidationError("weights length does not match metric");
  FrechetSpread s;
  s.frechet = frechet_embed(m);
  s.mean.assign(n, 0.0);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t c = 0; c < n; ++c) s.mean[c] += mu[w] * m(w, c);
  s.radius.resize(n);
  Vector scratch;
  double acc = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    s.radius[x] = diff_norm(s.frechet.host, s.frechet.points[x], s.mean, scratch);
    acc += mu[x] * powd(s.radius[x], q);
  }
  s.moment = std::pow(acc, 1.0 / q);
  return s;
}

std::vector<std::size_t> a_tau_set(const FrechetSpread& s, double tau) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < s.radius.size(); ++x)
    if (s.radius[x] <= tau * s.moment) out.push_back(x);
  return out;
}

LineEmbedResult line_embed(const FiniteMetricSpace& m, const ProbabilityWeights& mu, double q) {
  const auto spread = frechet_spread(m, mu, q);
  LineEmbedResult out;
  out.raw = spread.radius;
  const NormedHost line = NormedHost::lp(2.0, 1);
  PointConfig raw = on_axis(line, out.raw);
  const double dom = pair_moment(m.matrix(), mu, q);
  const double img = pair_moment(distance_matrix(raw), mu, q);
  // Radii that agree up to roundoff (vertex-transitive spaces) give no line image.
  const auto [lo, hi] = std::minmax_element(out.raw.begin(), out.raw.end());
  if (img == 0.0 || *hi - *lo <= 1e-12 * *hi) {
    out.scale = 1.0;
    out.map = EmbeddingMap(m, std::move(raw), mu);
    out.summary.average_exponent = q;
    out.summary.holder_constant = holder_constant(out.map, 1.0);
    out.summary.p_average_ratio = 0.0;
    out.summary.distortion = kInf;
    out.summary.degenerate = true;
    return out;
  }
  out.scale = std::pow(dom / img, 1.0 / q);
  out.map = EmbeddingMap(m, scaled(raw, out.scale), mu);
  out.summary = summarize(out.map, 1.0, q);
  return out;
}

double raise_advisory(double d, double p, double q) {
  return d + q / (p * std::log(std::numbers::e + q / (p * d)));
}

ExponentChangeResult raise_exponent(const EmbeddingMap& f, double p, double q) {
  if (!(p >= 1.0) || !(q >= p) || !std::isfinite(q)) throw ValidationError("need q >= p >= 1");
  if (support_size(f.weights) < 2) throw ValidationError("measure is a single atom");
  ExponentChangeResult out;
  out.input_distortion = summarize(f, 1.0, p).distortion;
  out.advisory = raise_advisory(out.input_distortion, p, q);
  if (p == q) {
    out.map = f;
    out.summary = summarize(f, 1.0, q);
    out.method = "identity";
    out.delta = 1.0;
    return out;
  }
  const double ip = frechet_spread(f.domain, f.weights, p).moment;
  const double iq = frechet_spread(f.domain, f.weights, q).moment;
  if (iq == 0.0) throw ValidationError("measure is supported on a single point of the metric");
  out.delta = ip / iq;
  out.tau = std::pow(1.0 - std::exp(-q), 1.0 / (q - p)) * std::pow(1.0 / out.delta, p / (q - p));

  EmbeddingMap rescaled(f.domain, scaled(f.image, 2.0 / out.delta), f.weights);
  auto rescaled_summary = summarize(rescaled, 1.0, q);
  auto line = line_embed(f.domain, f.weights, q);
  Vector line_values = line.raw;
  for (double& v : line_values) v *= line.scale;
  EmbeddingMap line_map(f.domain, on_axis(f.image.host, line_values), f.weights);
  if (line.summary.distortion < rescaled_summary.distortion) {
    out.map = std::move(line_map);
    out.summary = summarize(out.map, 1.0, q);
    out.method = "line";
  } else {
    out.map = std::move(rescaled);
    out.summary = rescaled_summary;
    out.method = "rescaled";
  }
  return out;
}

ExponentChangeResult lower_exponent(const EmbeddingMap& f, double p, double q) {
  if (!(q >= 1.0) || !(p >= q) || !std::isfinite(p)) throw ValidationError("need p >= q >= 1");
  ExponentChangeResult out;
  out.input_distortion = summarize(f, 1.0, p).distortion;
  if (p == q) {
    out.map = f;
    out.summary = summarize(f, 1.0, q);
    out.method = "identity";
    return out;
  }
  const auto spread = frechet_spread(f.domain, f.weights, q);
  out.tau = 8.0;
  std::vector<std::size_t> kept;
  for (std::size_t x : a_tau_set(spread, out.tau))
    if (f.weights[x] > 0.0) kept.push_back(x);
  if (kept.empty()) throw ValidationError("restriction set A_8 carries no mass");
  Vector mass(f.weights.size(), 0.0);
  out.retained_mass = 0.0;
  for (std::size_t x : kept) {
    mass[x] = f.weights[x];
    out.retained_mass += f.weights[x];
  }
  const auto restricted = ProbabilityWeights::normalized(mass);
  const double dom = pair_moment(f.domain.matrix(), restricted, q);
  const double img = pair_moment(distance_matrix(f.image), restricted, q);
  const double s = (dom > 0.0 && img > 0.0) ? std::pow(dom / img, 1.0 / q) : 1.0;
  out.map = EmbeddingMap(f.domain, scaled(f.image, s), f.weights);
  out.summary = summarize(out.map, 1.0, q);
  out.method = "restrict_a8";
  return out;
}

HilbertRealization hilbert_realize(const FiniteMetricSpace& m, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  const std::size_t n = m.size();
  if (n == 0) throw ValidationError("empty metric space");
  Matrix sq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq(i, j) = powd(m(i, j), 2.0 * omega);
  Vector row_mean(n, 0.0);
  double all_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += sq(i, j);
    row_mean[i] /= static_cast<double>(n);
    all_mean += row_mean[i];
  }
  all_mean /= static_cast<double>(n);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + all_mean);

  auto eig = symmetric_eigen(b, true);
  HilbertRealization out;
  out.trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) out.trace += b(i, i);
  out.min_eigenvalue = eig.values.back();
  if (out.min_eigenvalue < -1e-8 * std::max(out.trace, 0.0))
    throw NumericalFailure("double-centered Gram matrix is not positive semidefinite");

  const double cut = 1e-14 * std::max(std::abs(eig.values.front()), 1e-300);
  std::size_t r = 0;
  while (r < n && eig.values[r] > cut) ++r;
  const std::size_t dim = std::max<std::size_t>(r, 1);
  std::vector<Vector> pts(n, Vector(dim, 0.0));
  for (std::size_t k = 0; k < r; ++k) {
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) pts[i][k] = eig.vectors(i, k) * root;
  }
  out.points = PointConfig(NormedHost::lp(2.0, dim), std::move(pts), m.labels());
  const Matrix realized = distance_matrix(out.points);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.max_error = std::max(out.max_error, std::abs(realized(i, j) - powd(m(i, j), omega)));
  return out;
}

HilbertRealization hilbert_realize_snowflake(const PointConfig& x) {
  if (x.host.is_product()) throw ValidationError("Hilbert realization needs an l_p host");
  const double p = x.host.p();
  if (!(p >= 1.0 && p <= 2.0)) throw ValidationError("Hilbert realization needs p in [1, 2]");
  return hilbert_realize(config_metric(x), p / 2.0);
}

double transfer_advisory(double d, double p, double q, double omega) {
  const double lead = std::pow(omega, -std::max(1.0, 1.0 / (q * omega)));
  const double inner = d + q * omega / (p * std::log(std::numbers::e + q * omega / (p * d)));
  return lead * std::pow(inner, std::max(p / q, omega));
}

TransferResult transfer_snowflake(const EmbeddingMap& f, double p, double q, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q))
    throw ValidationError("need p, q finite and >= 1");
  TransferResult out;
  out.input_distortion = summarize(f, 1.0, p).distortion;
  out.advisory = transfer_advisory(out.input_distortion, p, q, omega);
  out.beta = std::max(q * omega, 1.0);

  ExponentChangeResult step1 = out.beta >= p ? raise_exponent(f, p, out.beta)
                                             : lower_exponent(f, p, out.beta);
  out.steps.push_back("exponent " + std::string(out.beta >= p ? "raise" : "lower") + ":" + step1.method);

  const double big = out.beta / omega;
  auto self = snowflake_self_embed(step1.map.image, f.weights, big, omega);
  out.steps.push_back("self-embed");

  EmbeddingMap holder(snowflake(f.domain, omega), self.map.image, f.weights);
  auto step3 = lower_exponent(holder, big, q);
  out.steps.push_back("exponent lower:" + step3.method);

  out.map = EmbeddingMap(f.domain, step3.map.image, f.weights);
  out.summary = summarize(out.map, omega, q);
  return out;
}

TransferResult transfer_snowflake(const FiniteMetricSpace& m, const ProbabilityWeights& mu,
                                  double p, double q, double omega) {
  EmbeddingMap f(m, frechet_embed(m), mu);
  return transfer_snowflake(f, p, q, omega);
}

SlEmbedding sl_character_embed(int k, int q, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("scale constant must be positive");
  SlEmbedding out;
  out.group = cayley_sl(k, q);
  out.word_metric = bfs_metric(out.group.graph);
  out.scale = c * k * std::log(static_cast<double>(q)) / std::log(static_cast<double>(k));
  const std::size_t n = out.group.order();
  const std::size_t kk = static_cast<std::size_t>(k * k);
  std::vector<Vector> pts(n, Vector(2 * kk));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t e = 0; e < kk; ++e) {
      const double angle = 2.0 * std::numbers::pi * out.group.elements[g][e] / q;
      pts[g][2 * e] = out.scale * std::cos(angle);
      pts[g][2 * e + 1] = out.scale * std::sin(angle);
    }
  auto mu = ProbabilityWeights::uniform(n);
  out.map = EmbeddingMap(FiniteMetricSpace::trusted(out.word_metric.matrix(), out.group.labels),
                         PointConfig(NormedHost::lp(2.0, 2 * kk), std::move(pts), out.group.labels),
                         mu);
  out.displacement_bound = out.scale * 2.0 * std::sqrt(static_cast<double>(k));
  Vector scratch;
  for (const auto& [u, v] : out.group.graph.edges())
    out.max_displacement = std::max(
        out.max_displacement,
        diff_norm(out.map.image.host, out.map.image.points[u], out.map.image.points[v], scratch));
  const Matrix img = distance_matrix(out.map.image);
  double min_img = kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) min_img = std::min(min_img, img(i, j));
  out.injective = n < 2 || min_img > 0.0;
  const double dom = pair_moment(out.word_metric.matrix(), mu, 1.0);
  const double im = pair_moment(img, mu, 1.0);
  out.average_ratio = im / dom;
  // Word metric is a path metric, so the Lipschitz constant is attained on edges.
  out.distortion = out.max_displacement / out.average_ratio;
  return out;
}

}  // namespace avgjohn
