#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace avgjohn::testing {

struct CliCase {
  std::string name;
  std::vector<std::string> args;
};

// One invocation per subcommand, all expected to exit 0.
inline std::vector<CliCase> cli_cases(const std::string& data) {
  return {
      {"gen-graph", {"gen-graph", "--family", "random_regular", "--n", "16", "--degree", "3", "--seed", "5"}},
      {"spectrum", {"spectrum", "--input", data + "/kernel_k3.json"}},
      {"gamma-est", {"gamma-est", "--family", "cycle", "--n", "8", "--budget", "4", "--seed", "3"}},
      {"mtype", {"mtype", "--family", "hypercube", "--k", "3", "--p", "2", "--steps", "2"}},
      {"extrapolate", {"extrapolate", "--input", data + "/square_l1.json", "--q", "2"}},
      {"boost", {"boost", "--input", data + "/boost_triangle.json", "--p", "1.5", "--q", "3"}},
      {"self-embed", {"self-embed", "--input", data + "/square_l1.json", "--omega", "0.5"}},
      {"transfer", {"transfer", "--family", "hypercube", "--k", "3", "--p", "1", "--q", "2", "--omega", "0.5"}},
      {"line-embed", {"line-embed", "--input", data + "/square_l1.json", "--q", "2"}},
      {"certify-dim", {"certify-dim", "--family", "hypercube", "--k", "3", "--p", "1", "--constant", "1"}},
      {"expander-bound", {"expander-bound", "--family", "hypercube", "--k", "4", "--omega", "0.5"}},
      {"hypercube-enflo", {"hypercube-enflo", "--k", "5", "--eps", "0.25"}},
      {"slk", {"slk", "--k", "2", "--q", "3"}},
      {"report", {"report"}},
      {"eta", {"eta", "--p", "1.5", "--omega", "0.2", "--sigma", "0.5"}},
      {"psi", {"psi", "--rho", "2", "--omega", "0.5"}},
  };
}

struct CliRun {
  int code = -1;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the tool, capturing stdout. stderr is discarded.
inline CliRun run_cli(const std::string& exe, const std::vector<std::string>& args) {
  std::string cmd = shell_quote(exe);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace avgjohn::testing
