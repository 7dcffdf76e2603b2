#include "proxknap/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "proxknap/errors.hpp"
#include "proxknap/knapsack.hpp"
#include "proxknap/oracles.hpp"
#include "proxknap/subset_sum.hpp"

namespace proxknap::cli {

namespace {

const std::vector<std::string> kAlgos = {"auto",  "bellman",        "proximity",
                                         "brute", "subsetsum-fast", "subsetsum-bitset"};

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

AnyInstance generate_instance(const GenerateParams& p) {
  if (p.w_max < 1 || p.w_max > Limits::kMaxWeight) throw MalformedInput("w_max out of range");
  if (p.p_max < 0 || p.p_max > Limits::kMaxProfit) throw MalformedInput("p_max out of range");
  if (p.n > Limits::kMaxItems) throw MalformedInput("n out of range");
  if (p.t && *p.t < 0) throw MalformedInput("negative capacity");
  if (p.t_ratio < 0) throw MalformedInput("negative capacity ratio");
  std::mt19937_64 rng(p.seed);

  auto capacity = [&](std::int64_t total) {
    if (p.t) return *p.t;
    return static_cast<std::int64_t>(p.t_ratio * static_cast<double>(total));
  };

  if (p.kind == "subsetsum") {
    SubsetSumInstance out;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
      out.elements.push_back(draw(rng, 1, p.w_max));
      total += out.elements.back();
    }
    out.target = capacity(total);
    check_limits(out);
    return out;
  }
  if (p.kind == "knapsack" || p.kind == "adversarial-dense") {
    KnapsackInstance out;
    std::int64_t total = 0;
    const bool dense = p.kind == "adversarial-dense";
    // Dense instances draw from two or three weights so that many items share
    // a weight, with profits close to a common efficiency.
    std::vector<std::int64_t> palette;
    if (dense) {
      const auto k = draw(rng, 2, 3);
      for (std::int64_t j = 0; j < k; ++j) palette.push_back(draw(rng, 1, p.w_max));
    }
    for (std::size_t i = 0; i < p.n; ++i) {
      Item item;
      if (dense) {
        item.weight = palette[static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(palette.size()) - 1))];
        const auto base = p.p_max * item.weight / p.w_max;
        item.profit = std::clamp<std::int64_t>(base + draw(rng, -2, 2), 0, p.p_max);
      } else {
        item.weight = draw(rng, 1, p.w_max);
        item.profit = draw(rng, 0, p.p_max);
      }
      total += item.weight;
      out.items.push_back(item);
    }
    out.capacity = capacity(total);
    check_limits(out);
    return out;
  }
  throw MalformedInput("unknown instance kind '" + p.kind + "'");
}

bool is_subset_sum_algo(const std::string& algo) {
  return algo == "subsetsum-fast" || algo == "subsetsum-bitset";
}

bool is_known_algo(const std::string& algo) {
  return std::find(kAlgos.begin(), kAlgos.end(), algo) != kAlgos.end();
}

namespace {

KnapsackInstance as_knapsack(const AnyInstance& instance) {
  if (auto k = std::get_if<KnapsackInstance>(&instance)) return *k;
  return std::get<SubsetSumInstance>(instance).as_knapsack();
}

RunReport solve_knapsack(const KnapsackInstance& instance, const SolveParams& params) {
  RunReport out;
  out.algorithm = params.algo;
  if (params.algo == "brute") {
    validate(instance);
    auto answer = oracle::brute_force_knapsack(instance);
    out.value = answer.value;
    out.selection = answer.selection;
    return out;
  }
  KnapsackOptions options;
  options.proximity_c = params.proximity_c;
  options.algorithm = params.algo == "bellman"     ? KnapsackAlgorithm::kBellman
                      : params.algo == "proximity" ? KnapsackAlgorithm::kProximity
                                                   : KnapsackAlgorithm::kAuto;
  auto result = solve_01_knapsack(instance, options);
  out.value = result.value;
  out.selection = result.selection;
  out.entries = result.stats.smawk_entries;
  if (params.algo == "auto") out.algorithm = "auto:" + result.algorithm;
  if (params.paranoid && result.algorithm == "proximity") {
    options.proximity_c = 2 * params.proximity_c;
    options.algorithm = KnapsackAlgorithm::kProximity;
    const auto second = solve_01_knapsack(instance, options);
    if (second.value != result.value) {
      out.warnings.push_back("proximity constant " + std::to_string(options.proximity_c) +
                             " gives value " + std::to_string(second.value));
      out.value = std::max(out.value, second.value);
      if (second.value > result.value) out.selection = second.selection;
    }
  }
  return out;
}

RunReport solve_subset(const SubsetSumInstance& instance, const SolveParams& params) {
  RunReport out;
  out.algorithm = params.algo;
  if (params.algo == "subsetsum-bitset") {
    check_limits(instance);
    const auto sums = oracle::bitset_subset_sums(instance.elements, instance.target);
    std::int64_t best = 0;
    for (auto v = instance.target; v >= 0; --v)
      if (sums.contains(v)) {
        best = v;
        break;
      }
    out.value = best;
    out.exact = best == instance.target;
    return out;
  }
  SubsetSumOptions options;
  options.c = params.proximity_c;
  options.paranoid = params.paranoid;
  options.seed = params.seed;
  options.mode = params.seed != 0 ? SubsetSumMode::kRandomized : SubsetSumMode::kDeterministic;
  const auto result = solve_subset_sum(instance, options);
  out.value = result.value;
  out.exact = result.exact;
  out.conv_len = result.counters.total_length;
  if (result.paranoid_mismatch)
    out.warnings.push_back("proximity constant " + std::to_string(2 * params.proximity_c) +
                           " disagrees; reporting the larger value");
  return out;
}

}  // namespace

RunReport run_solver(const AnyInstance& instance, const SolveParams& params) {
  if (!is_known_algo(params.algo)) throw MalformedInput("unknown algorithm '" + params.algo + "'");
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  if (is_subset_sum_algo(params.algo)) {
    auto s = std::get_if<SubsetSumInstance>(&instance);
    if (!s) throw MalformedInput(params.algo + " needs a subsetsum instance");
    out = solve_subset(*s, params);
  } else {
    out = solve_knapsack(as_knapsack(instance), params);
  }
  out.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string format_report(const RunReport& report, bool witness) {
  std::ostringstream os;
  os << "value " << report.value << '\n';
  if (report.exact) os << "decision " << (*report.exact ? "yes" : "no") << '\n';
  if (witness && report.selection) {
    os << "items";
    for (auto i : *report.selection) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

std::int64_t default_value_solver(const std::string& algo, const AnyInstance& instance) {
  SolveParams params;
  params.algo = algo;
  return run_solver(instance, params).value;
}

AnyInstance verify_instance(const VerifyParams& params, std::size_t trial) {
  std::mt19937_64 rng(params.seed * 1000003 + trial);
  GenerateParams g;
  const bool subset = std::all_of(params.algos.begin(), params.algos.end(), is_subset_sum_algo);
  g.kind = subset ? "subsetsum" : (trial % 4 == 3 ? "adversarial-dense" : "knapsack");
  g.n = static_cast<std::size_t>(draw(rng, 1, static_cast<std::int64_t>(std::max<std::size_t>(params.n, 1))));
  g.w_max = draw(rng, 1, std::max<std::int64_t>(params.w_max, 1));
  g.p_max = draw(rng, 0, 100);
  g.t = draw(rng, 0, static_cast<std::int64_t>(g.n) * g.w_max);
  g.seed = rng();
  return generate_instance(g);
}

int run_verify(const VerifyParams& params, const ValueSolver& solver,
               std::ostream& out, std::ostream& err) {
  if (params.algos.size() < 2) {
    err << "verify needs at least two algorithms\n";
    return kParse;
  }
  for (const auto& a : params.algos)
    if (!is_known_algo(a)) {
      err << "unknown algorithm '" << a << "'\n";
      return kParse;
    }
  const bool any_subset = std::any_of(params.algos.begin(), params.algos.end(), is_subset_sum_algo);
  const bool all_subset = std::all_of(params.algos.begin(), params.algos.end(), is_subset_sum_algo);
  if (any_subset && !all_subset) {
    err << "cannot mix subset-sum and knapsack algorithms\n";
    return kParse;
  }

  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    const auto instance = verify_instance(params, trial);
    std::vector<std::int64_t> values;
    for (const auto& a : params.algos) values.push_back(solver(a, instance));
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (values[k] == values[0]) continue;
      std::ofstream file(params.artifact);
      file << serialize_instance(instance);
      out << "mismatch on trial " << trial << ": " << params.algos[0] << '=' << values[0]
          << ' ' << params.algos[k] << '=' << values[k] << '\n';
      out << "instance written to " << params.artifact << '\n';
      return kMismatch;
    }
  }
  out << params.trials << '/' << params.trials << " ok\n";
  return kOk;
}

namespace {

struct BenchPoint {
  std::size_t n;
  std::int64_t w_max;
};

}  // namespace

int run_bench(const std::string& suite, std::ostream& csv, std::ostream& err, bool quick) {
  std::vector<std::string> algos;
  std::string kind;
  std::vector<BenchPoint> points;
  if (suite == "knapsack-scaling") {
    kind = "knapsack";
    algos = {"bellman", "proximity"};
    points = quick ? std::vector<BenchPoint>{{40, 16}, {60, 16}}
                   : std::vector<BenchPoint>{{128, 64}, {512, 64}, {256, 256}, {512, 256}, {64, 1024}, {128, 1024}};
  } else if (suite == "subsetsum-scaling") {
    kind = "subsetsum";
    algos = {"subsetsum-bitset", "subsetsum-fast"};
    points = quick ? std::vector<BenchPoint>{{40, 16}, {60, 16}}
                   : std::vector<BenchPoint>{{1024, 64}, {16384, 64}, {4096, 256}, {65536, 256}, {65536, 1024}};
  } else {
    err << "unknown bench suite '" << suite << "'\n";
    return kParse;
  }

  csv << "suite,n,w_max,t,algo,value,millis,entries,conv_len\n";
  int status = kOk;
  for (std::size_t k = 0; k < points.size(); ++k) {
    GenerateParams g;
    g.kind = kind;
    g.n = points[k].n;
    g.w_max = points[k].w_max;
    g.p_max = 1000;
    g.t_ratio = 0.5;
    g.seed = 1000 + k;
    const auto instance = generate_instance(g);
    const auto t = std::visit([](const auto& x) {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, KnapsackInstance>) return x.capacity;
      else return x.target;
    }, instance);
    std::optional<std::int64_t> reference;
    for (const auto& algo : algos) {
      SolveParams params;
      params.algo = algo;
      const auto report = run_solver(instance, params);
      csv << suite << ',' << g.n << ',' << g.w_max << ',' << t << ',' << algo << ','
          << report.value << ',' << report.millis << ',' << report.entries << ','
          << report.conv_len << '\n';
      if (reference && *reference != report.value) {
        err << "value mismatch at n=" << g.n << " w_max=" << g.w_max << '\n';
        status = kMismatch;
      }
      reference = report.value;
    }
  }
  return status;
}

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw MalformedInput("cannot open '" + path + "'");
    os << file.rdbuf();
  }
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact 0-1 knapsack and subset sum solver"};
  app.require_subcommand(1);

  GenerateParams gen;
  std::int64_t gen_t = -1;
  auto* generate = app.add_subcommand("generate", "Write a random instance to standard output");
  generate->add_option("--kind", gen.kind, "knapsack | subsetsum | adversarial-dense");
  generate->add_option("--n", gen.n, "Number of items");
  generate->add_option("--wmax", gen.w_max, "Maximum weight");
  generate->add_option("--pmax", gen.p_max, "Maximum profit");
  generate->add_option("--t", gen_t, "Capacity (default: ratio of the total weight)");
  generate->add_option("--t-ratio", gen.t_ratio, "Capacity as a fraction of the total weight");
  generate->add_option("--seed", gen.seed, "Random seed");

  SolveParams solve;
  std::string input;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("input", input, "Instance file, or - for standard input")->required();
  solve_cmd->add_option("--algo", solve.algo, "auto | bellman | proximity | brute | subsetsum-fast | subsetsum-bitset");
  solve_cmd->add_flag("--witness", solve.witness, "Print the chosen items");
  solve_cmd->add_option("--proximity-c", solve.proximity_c, "Proximity constant");
  solve_cmd->add_flag("--paranoid", solve.paranoid, "Re-run with twice the proximity constant");
  solve_cmd->add_option("--seed", solve.seed, "Seed; non-zero enables randomized subset sums");

  VerifyParams verify;
  std::string verify_algos = "proximity,bellman";
  auto* verify_cmd = app.add_subcommand("verify", "Compare two algorithms on random instances");
  verify_cmd->add_option("--algos", verify_algos, "Comma-separated algorithms");
  verify_cmd->add_option("--trials", verify.trials, "Number of instances");
  verify_cmd->add_option("--n", verify.n, "Maximum number of items");
  verify_cmd->add_option("--wmax", verify.w_max, "Maximum weight");
  verify_cmd->add_option("--seed", verify.seed, "Random seed");
  verify_cmd->add_option("--artifact", verify.artifact, "Where to write a failing instance");

  std::string suite, bench_out;
  bool quick = false;
  auto* bench = app.add_subcommand("bench", "Timing comparison as CSV");
  bench->add_option("--suite", suite, "knapsack-scaling | subsetsum-scaling")->required();
  bench->add_option("--out", bench_out, "CSV path (default: standard output)");
  bench->add_flag("--quick", quick, "Small points only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParse;
  }

  try {
    if (generate->parsed()) {
      if (gen_t >= 0) gen.t = gen_t;
      out << serialize_instance(generate_instance(gen));
      return kOk;
    }
    if (solve_cmd->parsed()) {
      const auto instance = parse_instance(read_input(input));
      const auto report = run_solver(instance, solve);
      for (const auto& w : report.warnings) err << "warning: " << w << '\n';
      if (solve.witness && !report.selection)
        err << "warning: " << report.algorithm << " does not report items\n";
      out << format_report(report, solve.witness);
      return kOk;
    }
    if (verify_cmd->parsed()) {
      std::stringstream ss(verify_algos);
      for (std::string a; std::getline(ss, a, ',');) verify.algos.push_back(a);
      return run_verify(verify, default_value_solver, out, err);
    }
    if (bench->parsed()) {
      if (suite.empty()) {
        err << "empty suite name\n";
        return kParse;
      }
      if (bench_out.empty()) return run_bench(suite, out, err, quick);
      std::ofstream file(bench_out);
      if (!file) {
        err << "cannot write '" << bench_out << "'\n";
        return kLimit;
      }
      return run_bench(suite, file, err, quick);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const MalformedInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const LimitError& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kLimit;
  }
  return kOk;
}

}  // namespace proxknap::cli
