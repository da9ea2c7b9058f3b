#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace schatten::cli {

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitOracle = 3 };

struct RunConfig {
  std::string subcommand;
  std::string mode;  // estimate: moment | sigma; sample: gas | ball | matrix
  std::string suite = "all";
  std::string field = "R";
  std::string subspace = "full";
  std::vector<std::string> ensembles;  // "a,b,c"
  std::vector<int> ns;
  std::vector<std::string> ps;         // "inf" or a number
  std::string sampler = "pushforward";
  std::vector<std::string> functionals;
  std::string method = "quadrature";
  double l = 2.0;
  long samples = 100000;
  int chains = 4;
  long burn_in = 2000;
  long thinning = 1;
  std::uint64_t seed = 1;
  double tolerance = 0.0;
  std::vector<double> gamma_d;
  std::vector<double> gamma_p;
  std::vector<double> gamma_q;
  std::string output;
  std::string format = "jsonl";
};

nlohmann::ordered_json to_json(const RunConfig& config);

// Parses argv (without the program name) and runs one subcommand. Records go to `out` unless
// --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace schatten::cli
