#pragma once

// Command implementations behind the proxknap executable. They live in the
// library so tests can drive them with their own streams and solvers.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxknap/instance.hpp"

namespace proxknap::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kParse = 2, kLimit = 3 };

struct GenerateParams {
  std::string kind = "knapsack";  // knapsack | subsetsum | adversarial-dense
  std::size_t n = 10;
  std::int64_t w_max = 10;
  std::int64_t p_max = 100;
  std::optional<std::int64_t> t;
  double t_ratio = 0.5;  // t = ratio * total weight when t is not given
  std::uint64_t seed = 1;
};

/// Deterministic for fixed parameters. Throws MalformedInput on bad ones.
AnyInstance generate_instance(const GenerateParams& params);

struct SolveParams {
  std::string algo = "auto";
  bool witness = false;
  double proximity_c = 4.0;
  bool paranoid = false;
  std::uint64_t seed = 0;
};

struct RunReport {
  std::string algorithm;
  std::int64_t value = 0;
  std::optional<bool> exact;  // subset sum decision
  std::optional<ItemSelection> selection;
  double millis = 0;
  std::uint64_t entries = 0;
  std::uint64_t conv_len = 0;
  std::vector<std::string> warnings;
};

bool is_subset_sum_algo(const std::string& algo);
bool is_known_algo(const std::string& algo);

/// Runs one algorithm. Knapsack algorithms accept subset-sum instances.
RunReport run_solver(const AnyInstance& instance, const SolveParams& params);

/// "value V", then "decision yes|no" for subset-sum solvers and
/// "items ..." when a witness is requested and available.
std::string format_report(const RunReport& report, bool witness);

using ValueSolver =
    std::function<std::int64_t(const std::string& algo, const AnyInstance&)>;

/// The solver used by `verify` unless a test substitutes its own.
std::int64_t default_value_solver(const std::string& algo,
                                  const AnyInstance& instance);

struct VerifyParams {
  std::vector<std::string> algos;
  std::size_t trials = 100;
  std::size_t n = 20;
  std::int64_t w_max = 20;
  std::uint64_t seed = 1;
  std::string artifact = "verify-failure.txt";
};

/// Instance of one verify trial.
AnyInstance verify_instance(const VerifyParams& params, std::size_t trial);

int run_verify(const VerifyParams& params, const ValueSolver& solver,
               std::ostream& out, std::ostream& err);

int run_bench(const std::string& suite, std::ostream& csv, std::ostream& err,
              bool quick = false);

/// Whole command line. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace proxknap::cli
