// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: avgjohn_acceptance <path-to-avgjohn> <test-data-dir> [--expect-fail N]...
// Exit status is 0 when the failing criteria are exactly the expected ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "avgjohn/boost.hpp"
#include "avgjohn/certificates.hpp"
#include "avgjohn/embeddings.hpp"
#include "avgjohn/graph.hpp"
#include "avgjohn/markov.hpp"
#include "avgjohn/mazur.hpp"
#include "avgjohn/metric.hpp"
#include "avgjohn/nonlinear_gap.hpp"
#include "cli_cases.hpp"
#include "oracles.hpp"

using namespace avgjohn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

StochasticKernel random_kernel(std::size_t n, std::mt19937_64& rng) {
  const auto w = oracle::random_conductances(n, rng);
  return StochasticKernel::from_conductances(Matrix::from_rows(w));
}

std::vector<Vector> gaussian_points(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Vector> pts(n, Vector(dim));
  for (auto& x : pts)
    for (double& v : x) v = g(rng);
  return pts;
}

ProbabilityWeights random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector mass(n);
  for (double& v : mass) v = u(rng);
  return ProbabilityWeights::normalized(mass);
}

double pick(std::mt19937_64& rng, const std::vector<double>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

// The 5 s limit applies to the library evaluations; oracle time is reported apart.
Outcome eta_closed_forms() {
  struct Point {
    double p, w, got;
  };
  std::vector<Point> pts;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double p = 0.5 + 3.5 * i / 19.0, w = 0.05 + 0.9 * j / 19.0;
      pts.push_back({p, w, eta(p, w)});
    }
  const double lib_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double high_err = 0.0, low_gap = 0.0, grid_err = 0.0;
  int low_bad = 0, searched = 0;
  for (const auto& pt : pts) {
    if (pt.p * pt.w >= 1.0) {
      high_err = std::max(high_err, std::abs(pt.got - pt.w * std::pow(2.0, (1.0 - pt.w) / (pt.p * pt.w))));
      continue;
    }
    ++searched;
    grid_err = std::max(grid_err, std::abs(pt.got - oracle::eta_grid(pt.p, pt.w, 1000000)));
    if (pt.p <= 1.0 && std::abs(pt.got - 1.0) > 1e-9) {
      ++low_bad;
      low_gap = std::max(low_gap, std::abs(pt.got - 1.0));
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  os << "p*w>=1 err " << fmt("%.2e", high_err) << "; p<=1 value 1 contradicted at " << low_bad
     << " points (max gap " << fmt("%.4f", low_gap) << ", infimum oracle agrees)"
     << "; grid oracle err " << fmt("%.2e", grid_err) << " over " << searched << " points"
     << "; library " << fmt("%.2f", lib_secs) << " s, oracle " << fmt("%.2f", total - lib_secs) << " s";
  const bool ok = high_err <= 1e-9 && low_bad == 0 && grid_err <= 1e-8 && lib_secs < 5.0;
  return {ok, os.str()};
}

Outcome holder_sandwich() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  long failures = 0, checks = 0;
  double worst_eq = 0.0;
  for (double host_p : {1.0, 2.0, kInf}) {
    const auto host = NormedHost::lp(host_p, 4);
    for (double p : {1.0, 1.5, 2.0, 3.0})
      for (double w : {0.2, 0.35, 0.5, 0.65, 0.8}) {
        for (int t = 0; t < 10000; ++t) {
          Vector x(4), y(4);
          const double sx = std::exp(scale(rng)), sy = std::exp(scale(rng));
          for (int c = 0; c < 4; ++c) {
            x[c] = sx * g(rng);
            y[c] = sy * g(rng);
          }
          ++checks;
          if (!holder_sandwich_check(host, x, y, p, w).pass) ++failures;
        }
        Vector x(4);
        for (double& v : x) v = g(rng);
        Vector y = x;
        for (double& v : y) v = -v;
        const auto r = holder_sandwich_check(host, x, y, p, w);
        worst_eq = std::max(worst_eq, std::abs(r.value - r.upper) / r.upper);
      }
  }
  return {failures == 0 && worst_eq <= 1e-9,
          std::to_string(failures) + " violations in " + std::to_string(checks) +
              " pairs, antipodal upper gap " + fmt("%.2e", worst_eq)};
}

Outcome self_embedding() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> nd(2, 64), dd(1, 16);
  double worst_avg = 0.0, worst_excess = -kInf, worst_half = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = nd(rng), dim = dd(rng);
    const double host_p = pick(rng, {1.0, 1.5, 2.0, 3.0, kInf});
    double p = pick(rng, {1.0, 1.5, 2.0, 3.0});
    double w = pick(rng, {0.2, 0.35, 0.5, 0.65, 0.8});
    if (t % 4 == 0) p = 2.0, w = 0.5;
    PointConfig x(NormedHost::lp(host_p, dim), gaussian_points(n, dim, rng));
    const auto r = snowflake_self_embed(x, random_weights(n, rng), p, w);
    worst_avg = std::max(worst_avg, std::abs(r.summary.p_average_ratio - 1.0));
    worst_excess = std::max(worst_excess, r.summary.holder_constant - r.bound);
    if (p == 2.0 && w == 0.5) worst_half = std::max(worst_half, r.summary.holder_constant);
  }
  const bool ok = worst_avg <= 1e-12 && worst_excess <= 1e-9 && worst_half <= 2.0 * std::sqrt(2.0);
  return {ok, "avg err " + fmt("%.2e", worst_avg) + ", constant minus bound " +
                  fmt("%.3e", worst_excess) + ", max constant at (2,1/2) " + fmt("%.6f", worst_half)};
}

Outcome spectra() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 64; ++n) {
    worst = std::max(worst, std::abs(spectrum(graph_kernel(complete(n))).lambda2 + 1.0 / (n - 1.0)));
    if (n >= 3)
      worst = std::max(worst, std::abs(spectrum(graph_kernel(cycle(n))).lambda2 -
                                       std::cos(2.0 * std::numbers::pi / n)));
  }
  for (int k = 1; k <= 10; ++k)
    worst = std::max(worst, std::abs(spectrum(graph_kernel(hypercube(k))).lambda2 - (1.0 - 2.0 / k)));
  return {worst <= 1e-9, "max error " + fmt("%.2e", worst)};
}

Outcome energy_saturation() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> nd(2, 32);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto k = random_kernel(nd(rng), rng);
    const Vector v = second_eigenvector(k);
    std::vector<Vector> pts;
    for (double c : v) pts.push_back({c});
    const double got = rayleigh_ratio(k, PointConfig(NormedHost::lp(2, 1), pts), 2.0).ratio;
    const double want = 1.0 / (1.0 - oracle::kernel_eigenvalues(k.matrix().to_rows(), k.pi().values())[1]);
    worst = std::max(worst, std::abs(got - want) / want);
  }
  return {worst <= 1e-8, "max relative error " + fmt("%.2e", worst)};
}

Outcome lazy_identity() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> nd(2, 16), dd(1, 4);
  std::uniform_real_distribution<double> qd(1.0, 4.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = nd(rng), dim = dd(rng);
    const auto k = random_kernel(n, rng);
    PointConfig x(NormedHost::lp(pick(rng, {1.0, 1.5, 2.0, 3.0, kInf}), dim), gaussian_points(n, dim, rng));
    const double q = qd(rng);
    const double lhs = absolute_rayleigh(lazy(k), x, x, q).ratio;
    const double rhs = 2.0 * rayleigh_ratio(k, x, q).ratio;
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return {worst <= 1e-12, "max relative error " + fmt("%.2e", worst)};
}

Outcome scalar_extrapolation() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> nd(2, 16);
  std::normal_distribution<double> g;
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = nd(rng);
    const auto k = random_kernel(n, rng);
    Vector s(n);
    for (double& v : s) v = g(rng);
    if (!scalar_extrapolation_check(k, s, pick(rng, {2.0, 3.0, 4.0})).pass) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations in 10000 triples"};
}

Outcome boost_instances() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> nd(2, 10), dd(1, 4);
  int bad_residual = 0, bad_center = 0, bad_sandwich = 0, bad_witness = 0, failures = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = nd(rng), dim = dd(rng);
    const double p = pick(rng, {1.0, 1.5});
    const double q = pick(rng, {2.0, 3.0});
    const auto k = random_kernel(n, rng);
    PointConfig x(NormedHost::lp(p, dim), gaussian_points(n, dim, rng));
    try {
      const auto w = extrapolation_witness_check(k, x, p, q, 1e-8, static_cast<std::uint64_t>(t));
      const auto& s = w.boost.solution;
      if (s.residual > 1e-8 * s.scale) ++bad_residual;
      if (w.boost.centering > 1e-6) ++bad_center;
      if (!w.boost.sandwich) ++bad_sandwich;
      if (!w.pass) ++bad_witness;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  PointConfig pair(NormedHost::lp(1.5, 2), {{0.3, -0.4}, {-0.3, 0.4}});
  const double eq = boost_config(ProbabilityWeights::uniform(2), pair, 1.5, 2).worst_lower_ratio;
  const bool ok = bad_residual + bad_center + bad_sandwich + bad_witness + failures == 0 &&
                  std::abs(eq - 1.0) <= 1e-10;
  std::ostringstream os;
  os << "solver failures " << failures << ", residual " << bad_residual << ", centering "
     << bad_center << ", sandwich " << bad_sandwich << ", boost inequality " << bad_witness
     << ", antipodal ratio " << fmt("%.12f", eq);
  return {ok, os.str()};
}

Outcome hypercube_certificate() {
  double worst = kInf;
  for (int k = 4; k <= 10; ++k)
    for (double e : {0.1, 0.25, 0.5})
      worst = std::min(worst, expander_avg_lower(hypercube(k), 0.5 + e).bound - std::pow(k / 2.0, e));
  bool enflo_exact = true;
  for (int k = 2; k <= 10; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<Vector> pts(n, Vector(static_cast<std::size_t>(k)));
    for (std::size_t v = 0; v < n; ++v)
      for (int b = 0; b < k; ++b) pts[v][b] = (v >> b) & 1U;
    const auto r = enflo_cube_check(PointConfig(NormedHost::lp(2, k), pts), k);
    const double want = static_cast<double>(k) * static_cast<double>(n);
    enflo_exact = enflo_exact && r.diagonals == want && r.edges == want;
  }
  return {worst >= -1e-9 && enflo_exact,
          "min bound minus (k/2)^eps " + fmt("%.4f", worst) + ", Enflo equality " +
              (enflo_exact ? "exact" : "broken")};
}

Outcome dimension_example() {
  std::vector<Vector> pts(8, Vector(3));
  for (std::size_t v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b) pts[v][b] = (v >> b) & 1U;
  const auto c = dim_certificate(PointConfig(NormedHost::lp(1, 3), pts), graph_kernel(hypercube(3)), 1.0, 1.0);
  const bool ok = std::abs(c.exponent - 1.0) <= 1e-9 && std::abs(c.bound - std::numbers::e) <= 1e-9;
  return {ok, "E = " + fmt("%.15f", c.exponent) + ", bound = " + fmt("%.15f", c.bound)};
}

Outcome sl_lab() {
  std::ostringstream os;
  bool ok = true;
  const int cases[3][3] = {{2, 3, 24}, {2, 5, 120}, {3, 2, 168}};
  for (const auto& c : cases) {
    const auto e = sl_character_embed(c[0], c[1]);
    const bool order_ok = e.group.order() == static_cast<std::size_t>(c[2]);
    const bool metric_ok = e.word_metric.triangle_defect() == 0.0;
    const bool disp_ok = e.max_displacement <= e.displacement_bound;
    const bool dist_ok = std::isfinite(e.distortion) && e.distortion > 0.0;
    ok = ok && order_ok && metric_ok && disp_ok && dist_ok;
    os << "SL" << c[0] << "(F" << c[1] << ") order " << e.group.order() << " distortion "
       << fmt("%.4f", e.distortion) << "; ";
  }
  return {ok, os.str()};
}

Outcome schoenberg() {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> nd(2, 24), dd(1, 6);
  double worst_err = 0.0, worst_psd = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = nd(rng), dim = dd(rng);
    const double p = pick(rng, {1.0, 1.5, 2.0});
    PointConfig x(NormedHost::lp(p, dim), gaussian_points(n, dim, rng));
    const auto h = hilbert_realize_snowflake(x);
    double target = 0.0;
    const Matrix d = distance_matrix(x);
    for (double v : d.data()) target = std::max(target, std::pow(v, p / 2.0));
    worst_err = std::max(worst_err, h.max_error / target);
    worst_psd = std::max(worst_psd, std::max(0.0, -h.min_eigenvalue) / h.trace);
  }
  PointConfig square(NormedHost::lp(1, 2), {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto h = hilbert_realize_snowflake(square);
  const double want[4][4] = {{0, 1, 1, std::sqrt(2.0)},
                             {1, 0, std::sqrt(2.0), 1},
                             {1, std::sqrt(2.0), 0, 1},
                             {std::sqrt(2.0), 1, 1, 0}};
  double worst_sq = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst_sq = std::max(worst_sq, std::abs(oracle::lp(oracle::sub(h.points.points[i], h.points.points[j]), 2) - want[i][j]));
  return {worst_err <= 1e-8 && worst_psd <= 1e-8 && worst_sq <= 1e-10,
          "relative error " + fmt("%.2e", worst_err) + ", PSD residual " + fmt("%.2e", worst_psd) +
              ", unit square error " + fmt("%.2e", worst_sq)};
}

Outcome cli_determinism(const std::string& exe, const std::string& data) {
  int mismatches = 0, nonzero = 0;
  std::string bad;
  const auto cases = avgjohn::testing::cli_cases(data);
  for (const auto& c : cases) {
    const auto a = avgjohn::testing::run_cli(exe, c.args);
    const auto b = avgjohn::testing::run_cli(exe, c.args);
    if (a.code != 0 || b.code != 0) ++nonzero, bad += " " + c.name + "(exit)";
    if (a.out != b.out || a.out.empty()) ++mismatches, bad += " " + c.name + "(bytes)";
  }
  return {mismatches == 0 && nonzero == 0,
          std::to_string(cases.size()) + " subcommands, " + std::to_string(mismatches) +
              " byte mismatches, " + std::to_string(nonzero) + " nonzero exits" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <avgjohn-binary> <test-data-dir> [--expect-fail N]...\n", argv[0]);
    return 2;
  }
  const std::string exe = argv[1], data = argv[2];
  std::set<int> expected;
  for (int i = 3; i + 1 < argc; i += 2)
    if (std::string(argv[i]) == "--expect-fail") expected.insert(std::atoi(argv[i + 1]));
  const std::vector<Criterion> criteria = {
      {1, "eta closed forms and grid oracle", 0, eta_closed_forms},
      {2, "sharp Holder sandwich", 30, holder_sandwich},
      {3, "snowflake self-embedding", 60, self_embedding},
      {4, "spectra of complete, cycle, cube graphs", 10, spectra},
      {5, "energy saturation by the second eigenvector", 0, energy_saturation},
      {6, "lazy-kernel absolute Rayleigh identity", 0, lazy_identity},
      {7, "scalar extrapolation", 0, scalar_extrapolation},
      {8, "Rayleigh boost", 120, boost_instances},
      {9, "hypercube certificate and Enflo saturation", 0, hypercube_certificate},
      {10, "dimension certificate worked example", 0, dimension_example},
      {11, "SL_k(F_q) lab", 60, sl_lab},
      {12, "Schoenberg realization", 0, schoenberg},
      {13, "CLI determinism", 0, [&] { return cli_determinism(exe, data); }},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.body();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      r.pass = false;
      r.detail += "; over time limit " + fmt("%.0f s", c.time_limit);
    }
    if (!r.pass) failed.insert(c.id);
    std::printf("%s criterion %2d: %s [%.2f s] %s\n", r.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                secs, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  if (failed == expected) {
    if (!expected.empty()) std::printf("failures match the expected list\n");
    return 0;
  }
  for (int id : failed)
    if (!expected.count(id)) std::printf("unexpected failure: criterion %d\n", id);
  for (int id : expected)
    if (!failed.count(id)) std::printf("expected failure now passes: criterion %d\n", id);
  return 1;
}
