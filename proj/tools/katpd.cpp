// Command-line front end: equivalence problems, annotated programs and
// randomized benchmarks.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "katpd/katpd.hpp"

namespace {

using namespace katpd;

constexpr int kExitEquivalent = 0;
constexpr int kExitDifferent = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string seconds_since(std::chrono::steady_clock::time_point start) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char out[32];
  std::snprintf(out, sizeof out, "%.4f", s);
  return out;
}

void print_history(const Verdict& v, const SymbolTable& table) {
  for (std::size_t i = 0; i < v.history.size(); ++i) {
    std::cout << "  H[" << i << "] " << to_string(v.history[i].first, table) << " | "
              << to_string(v.history[i].second, table) << '\n';
  }
}

struct EquivArgs {
  std::string file;
  bool gamma = false;
  bool show_h = false;
  bool witness = false;
};

int cmd_equiv(const EquivArgs& args) {
  const Problem problem = parse_problem(read_file(args.file));
  const SymbolTable& table = problem.table;
  CheckOptions options{args.show_h};
  const bool assumptions = !problem.gamma.empty();
  const bool direct = assumptions && args.gamma;

  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  if (!assumptions) {
    v = equiv(problem.lhs, problem.rhs, table, options);
  } else {
    v = check_implication(problem.gamma, problem.lhs, problem.rhs, direct ? Method::GammaDirect : Method::Uru, table,
                          options);
  }
  const std::string elapsed = seconds_since(start);

  std::cout << "method: " << (!assumptions ? "plain" : direct ? "gamma" : "uru") << '\n';
  std::cout << "verdict: " << (v.equivalent ? "equivalent" : "not equivalent") << '\n';
  std::cout << "h: " << v.h_size << '\n';
  std::cout << "time: " << elapsed << " s\n";
  if (v.counterexample) {
    std::cout << "counterexample: " << to_string(*v.counterexample, table) << '\n';
    if (args.witness) {
      const GuardedString& x = *v.counterexample;
      bool in_lhs = false;
      bool in_rhs = false;
      if (direct) {
        in_lhs = gs_gamma_contains(problem.lhs, problem.gamma, x);
        in_rhs = gs_gamma_contains(problem.rhs, problem.gamma, x);
      } else {
        const KatExpr extra = assumptions ? build_uru(problem.gamma, table) : KatExpr::zero();
        in_lhs = gs_contains(KatExpr::sum(problem.lhs, extra), x);
        in_rhs = gs_contains(KatExpr::sum(problem.rhs, extra), x);
      }
      std::cout << "witness: lhs " << (in_lhs ? "accepts" : "rejects") << ", rhs " << (in_rhs ? "accepts" : "rejects")
                << (in_lhs != in_rhs ? " (confirmed)" : " (NOT CONFIRMED)") << '\n';
    }
  }
  if (args.show_h) print_history(v, table);
  return v.equivalent ? kExitEquivalent : kExitDifferent;
}

int cmd_hoare(const std::string& file, const std::string& method, bool show_h) {
  const ProgramFile parsed = parse_program_file(read_file(file));
  const SymbolTable& table = parsed.table;
  const auto start = std::chrono::steady_clock::now();
  const PcaResult result =
      check_pca(parsed.pca, method == "uru" ? Method::Uru : Method::GammaDirect, table, CheckOptions{show_h});
  const std::string elapsed = seconds_since(start);

  std::cout << "encoding: " << to_string(encode_pca(parsed.pca, table), table) << " = 0\n";
  std::cout << "assumptions:\n";
  for (const auto& h : result.gamma.action_hyps) std::cout << "  " << to_string(h, table) << '\n';
  for (const auto& h : result.gamma.bool_hyps) std::cout << "  " << to_string(h, table) << '\n';
  for (const auto& [name, points] : parsed.shared_tests) {
    std::cout << "note: test " << name << " names several program points:";
    for (const auto& p : points) std::cout << ' ' << p << ';';
    std::cout << '\n';
  }
  std::cout << "method: " << method << '\n';
  std::cout << "verdict: " << (result.verdict.equivalent ? "valid" : "invalid") << '\n';
  std::cout << "h: " << result.verdict.h_size << '\n';
  std::cout << "time: " << elapsed << " s\n";
  if (result.verdict.counterexample) {
    std::cout << "counterexample: " << to_string(*result.verdict.counterexample, table) << '\n';
  }
  if (show_h) print_history(result.verdict, table);
  return result.verdict.equivalent ? kExitEquivalent : kExitDifferent;
}

int cmd_bench(const BenchConfig& config, const std::string& out, bool timings) {
  const BenchReport report = run_bench(config);
  print_report(std::cout, report, timings);
  if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw Error("cannot write '" + out + "'");
    write_samples_csv(file, report, timings);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KAT equivalence by partial derivatives"};
  app.require_subcommand(1);

  EquivArgs equiv_args;
  auto* equiv_cmd = app.add_subcommand("equiv", "decide lhs = rhs, modulo any assume: lines");
  equiv_cmd->add_option("file", equiv_args.file, "problem file")->required();
  equiv_cmd->add_flag("--gamma", equiv_args.gamma, "decide assumptions directly instead of through e + uru");
  equiv_cmd->add_flag("--show-h", equiv_args.show_h, "print the processed pairs");
  equiv_cmd->add_flag("--witness", equiv_args.witness, "check the counterexample against the semantics");

  std::string hoare_file;
  std::string method = "gamma";
  bool hoare_show_h = false;
  auto* hoare_cmd = app.add_subcommand("hoare", "check an annotated program");
  hoare_cmd->add_option("file", hoare_file, "program file")->required();
  hoare_cmd->add_option("--method", method, "gamma or uru")->check(CLI::IsMember({"gamma", "uru"}));
  hoare_cmd->add_flag("--show-h", hoare_show_h, "print the processed pairs");

  BenchConfig bench;
  std::string mode = "self";
  std::string out;
  bool timings = false;
  auto* bench_cmd = app.add_subcommand("bench", "random expressions checked against themselves or each other");
  bench_cmd->add_option("--k", bench.k, "number of actions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--l", bench.l, "number of tests")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--size", bench.size, "grammar nodes per expression")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--samples", bench.samples, "number of checks")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--mode", mode, "self or pairs")->check(CLI::IsMember({"self", "pairs"}));
  bench_cmd->add_option("--out", out, "write one CSV row per sample");
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--timings", timings, "include wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*equiv_cmd) return cmd_equiv(equiv_args);
    if (*hoare_cmd) return cmd_hoare(hoare_file, method, hoare_show_h);
    bench.mode = mode == "pairs" ? BenchMode::Pairs : BenchMode::Self;
    return cmd_bench(bench, out, timings);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
