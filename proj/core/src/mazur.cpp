#include "avgjohn/mazur.hpp"

#include <algorithm>
#include <cmath>

#include "avgjohn/errors.hpp"

namespace avgjohn {

namespace {

void check_omega_open(double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw ValidationError("omega must lie in (0, 1)");
}

}  // namespace

double eta_profile(double p, double omega, double sigma) {
  const double pw = p * omega;
  const double tail = (1.0 - omega) / pw;
  if (sigma >= 1.0) return omega * std::pow(2.0, tail);
  if (sigma <= 0.0) return 1.0;
  // (1 - sigma^w) / (1 - sigma) via expm1 to stay accurate near sigma = 1.
  const double ls = std::log(sigma);
  const double ratio = std::expm1(omega * ls) / std::expm1(ls);
  return ratio * std::pow(1.0 + std::exp(pw * ls), tail);
}

double eta(double p, double omega) {
  check_omega_open(omega);
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("p must be positive and finite");
  if (p * omega >= 1.0) return omega * std::pow(2.0, (1.0 - omega) / (p * omega));
  // No closed form below p w = 1: for p <= 1 the infimum drops under 1 once
  // omega 2^{(1-w)/(p w)} < 1, so search there as well.
  // Callers sweep many pairs at one (p, omega); keep the last search.
  thread_local double cached_p = 0.0, cached_omega = 0.0, cached_value = 0.0;
  if (p == cached_p && omega == cached_omega) return cached_value;

  // Search in t = sigma^omega: the profile varies like sigma^omega near 0.
  auto profile = [&](double t) { return eta_profile(p, omega, std::pow(t, 1.0 / omega)); };
  constexpr int kNodes = 1 << 12;
  int best = 0;
  double best_val = profile(0.0);
  for (int i = 1; i <= kNodes; ++i) {
    const double v = profile(static_cast<double>(i) / kNodes);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(kNodes);
  double hi = std::min(kNodes, best + 1) / static_cast<double>(kNodes);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - phi * (hi - lo);
  double b = lo + phi * (hi - lo);
  double fa = profile(a);
  double fb = profile(b);
  while (hi - lo > 1e-10) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = profile(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = profile(b);
    }
  }
  cached_p = p;
  cached_omega = omega;
  cached_value = std::min({best_val, fa, fb});
  return cached_value;
}

Vector radial_power(const NormedHost& host, const Vector& x, double r) {
  const double nx = host.norm(x);
  Vector out(x.size(), 0.0);
  if (nx == 0.0) return out;
  const double scale = std::pow(nx, r - 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * scale;
  return out;
}

Vector f_omega(const NormedHost& host, const Vector& x, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  return radial_power(host, x, omega);
}

Vector f_omega_inverse(const NormedHost& host, const Vector& z, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  return radial_power(host, z, 1.0 / omega);
}

double psi_omega(double rho, double omega) {
  check_omega_open(omega);
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ValidationError("rho must be finite and nonnegative");
  if (rho <= 0.5) return std::pow(1.0 - rho, omega) + std::pow(rho, omega);
  if (rho <= 1.0) return std::pow(rho, omega - 1.0);
  return std::pow(rho, omega) - (rho - 1.0) / std::pow(1.0 + rho, 1.0 - omega);
}

SandwichReport holder_sandwich_check(const NormedHost& host, const Vector& x, const Vector& y,
                                     double p, double omega, double rel_tol) {
  check_omega_open(omega);
  if (x.size() != host.dim() || y.size() != host.dim())
    throw ValidationError("vector length does not match host dimension");
  SandwichReport r;
  Vector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  const double dxy = host.norm(diff);
  const auto fx = f_omega(host, x, omega);
  const auto fy = f_omega(host, y, omega);
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = fx[i] - fy[i];
  r.value = host.norm(diff);
  r.upper = std::pow(2.0, 1.0 - omega) * std::pow(dxy, omega);
  const double pw = p * omega;
  const double denom = std::pow(std::pow(host.norm(x), pw) + std::pow(host.norm(y), pw),
                                (1.0 - omega) / pw);
  r.lower = denom > 0.0 ? eta(p, omega) * dxy / denom : 0.0;
  r.lower_slack = r.value - r.lower;
  r.upper_slack = r.upper - r.value;
  r.pass = r.value >= r.lower * (1.0 - rel_tol) && r.value <= r.upper * (1.0 + rel_tol);
  return r;
}

}  // namespace avgjohn
