#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "avgjohn/errors.hpp"
#include "avgjohn/version.hpp"
#include "commands.hpp"

namespace avgjohn::cli {

namespace {

struct Sub {
  const char* name;
  const char* help;
  bool graph = false;   // --family --k --n --degree --field
  bool input = false;   // --input
  bool p = false;
  bool target_q = false;
  bool omega = false;
};

// Which flags each subcommand accepts. slk and hypercube-enflo add theirs by hand.
constexpr Sub kSubs[] = {
    {"gen-graph", "build a graph from a family and emit it", true, true},
    {"spectrum", "eigenvalues and gaps of a reversible kernel", true, true},
    {"gamma-est", "search for a lower bound on the nonlinear gap", true, true, true},
    {"mtype", "Markov type ratio of a metric", true, true, true},
    {"extrapolate", "scalar or vector extrapolation check", true, true, false, true},
    {"boost", "center solve and Rayleigh boost of a configuration", true, true, true, true},
    {"self-embed", "snowflake self-embedding of a configuration", false, true, true, false, true},
    {"transfer", "snowflake transfer between average exponents", true, true, true, true, true},
    {"line-embed", "average embedding into the line", true, true, false, true},
    {"certify-dim", "dimension lower-bound certificate", true, true, true},
    {"expander-bound", "average distortion lower bound for a graph", true, true, true, true, true},
    {"hypercube-enflo", "cube diagonal-versus-edge check", false, true},
    {"slk", "SL_k(F_q) Cayley graph and character embedding", false, false},
    {"report", "aggregate reports or run the built-in suite", false, true},
    {"eta", "sharp normalization constant", false, false, true, false, true},
    {"psi", "scalar normalization profile", false, false, false, false, true},
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"average-distortion embeddings and nonlinear spectral gap toolkit", kToolName};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunOptions o;
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", o.tol, "solver tolerance")->capture_default_str();
  app.add_option("--budget", o.budget, "search restarts")->capture_default_str();
  app.add_option("--out", o.out, "report path (stdout if empty)");
  app.add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--constant", o.constant, "certificate constant K")->capture_default_str();

  for (const auto& s : kSubs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (s.input) {
      auto* in = sub->add_option("--input", o.inputs, "input JSON file");
      if (std::string(s.name) != "report") in->expected(1);
    }
    if (s.graph) {
      sub->add_option("--family", o.family, "hypercube|cycle|complete|random_regular|cayley_sl");
      sub->add_option("--k", o.k, "family dimension or matrix size");
      sub->add_option("--n", o.n, "vertex count");
      sub->add_option("--degree", o.degree, "regular degree");
      sub->add_option("--field", o.field, "field size for cayley_sl");
    }
    if (s.p) sub->add_option("--p", o.p, "average exponent");
    if (s.target_q) sub->add_option("--q", o.target_q, "target exponent");
    if (s.omega) sub->add_option("--omega", o.omega, "Holder exponent in (0, 1]");
    const std::string name = s.name;
    if (name == "gamma-est") {
      sub->add_option("--host-p", o.host_p, "host lp exponent (defaults to --p)");
      sub->add_option("--dim", o.dim, "host dimension")->check(CLI::PositiveNumber);
    }
    if (name == "mtype") sub->add_option("--steps", o.steps, "kernel power")->check(CLI::PositiveNumber);
    if (name == "extrapolate") sub->add_option("--beta", o.beta, "scalar exponent");
    if (name == "expander-bound") {
      sub->add_flag("--sobolev", o.sobolev, "use the Sobolev constant form");
      sub->add_flag("--general", o.general, "general target lower bound (needs --p --q)");
    }
    if (name == "hypercube-enflo") {
      sub->add_option("--k", o.k, "cube dimension")->required();
      sub->add_option("--eps", o.eps, "also emit the lower bound at omega = 1/2 + eps");
    }
    if (name == "slk") {
      sub->add_option("--k", o.k, "matrix size")->required();
      sub->add_option("--q", o.q, "prime field size")->required();
      sub->add_option("--c", o.c, "character scale");
    }
    if (name == "eta") sub->add_option("--sigma", o.sigma, "also evaluate the profile here");
    if (name == "psi") sub->add_option("--rho", o.rho, "radius")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  o.subcommand = app.get_subcommands().front()->get_name();

  try {
    const io::json report = execute(o);
    const std::string text = o.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw ValidationError("cannot open output file: " + o.out);
      f << text;
      if (!f) throw ValidationError("failed writing output file: " + o.out);
    }
    return kExitOk;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace avgjohn::cli
