#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avgjohn/io.hpp"

namespace avgjohn::cli {

inline constexpr const char* kToolName = "avgjohn";

// Everything a run depends on. Unset optionals are left out of the embedded spec.
struct RunOptions {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int budget = 8;
  std::string out;
  std::string format = "json";
  double constant = 1.0;

  std::optional<std::string> family;
  std::optional<long> k, n, degree, field, q, steps;
  std::optional<double> p, target_q, omega, beta, eps, sigma, rho, c, host_p;
  std::optional<long> dim;
  bool sobolev = false;
  bool general = false;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

// Builds the report for one subcommand. Throws ValidationError or NumericalFailure.
io::json execute(const RunOptions& opts);

// Spec block embedded in every report.
io::json spec_json(const RunOptions& opts);

// Scalar leaves as "path,value" lines.
std::string to_csv(const io::json& report);

// Parses argv, runs, writes the report. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avgjohn::cli
