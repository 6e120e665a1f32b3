// xorcomm: analyze boolean functions and the XOR functions f(x xor y) they
// induce.
//
// Exit codes: 0 success, 1 failed verification, 2 usage or input error,
// 3 conjecture scan found a function whose support no shift overlaps.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "xorcomm/xorcomm.hpp"

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCounterexample = 3;

using namespace xorcomm;

int cmd_analyze(const std::string& input) {
  write_analysis(std::cout, resolve_input(input));
  return 0;
}

int cmd_rank(const std::string& input) {
  const BooleanFunction f = as_function(resolve_input(input));
  std::cout << "rank=" << matrix_rank(f) << '\n';
  if (f.arity() <= kMaxEliminationArity) std::cout << "rank_elimination=" << elimination_rank(f) << '\n';
  std::cout << "dim=" << one_way_complexity(f) << '\n';
  if (f.arity() <= kMaxMaterializedArity) std::cout << "distinct_rows=" << distinct_rows(f) << '\n';
  return 0;
}

int cmd_tree(const std::string& input, const std::string& out_path) {
  const BooleanFunction f = as_function(resolve_input(input));
  const auto tree = build_tree(f);
  std::ostringstream body;
  body << "# n=" << f.arity() << " depth=" << tree.depth() << " comm_cost=" << tree_comm_cost(tree)
       << " sparsity=" << wht(f).support_size() << '\n';
  tree.serialize(body, f.arity());
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << body.str();
  }
  return 0;
}

int cmd_scan(int n, std::optional<std::uint64_t> sample, std::uint64_t seed, bool quiet) {
  if (!quiet) write_scan_header(std::cout);
  const auto report = conjecture_scan(n, sample, seed, [&](const ScanRecord& rec) {
    if (!quiet) write_scan_record(std::cout, rec, n);
  });
  write_scan_summary(std::cout, report);
  if (report.zero_ratio_count > 0) {
    std::cerr << "conjecture scan: found " << report.zero_ratio_count << " function(s) with ratio 0\n";
    return kExitCounterexample;
  }
  return 0;
}

int cmd_addressing(int m, const std::string& out_path) {
  const BooleanFunction f = addressing_function(m);
  const FourierSpectrum spec = wht(f);
  std::cout << "m=" << m << '\n'
            << "n=" << f.arity() << '\n'
            << "l1=" << detail::format_double(spectral_norm(spec, Norm::L1)) << '\n'
            << "sparsity=" << spec.support_size() << '\n'
            << "dim=" << fourier_dimension(spec) << '\n'
            << "decision_tree_depth=" << m + 1 << '\n';
  if (m <= 4) std::cout << "vc_lower_bound=" << addressing_vc_witness(m) << '\n';
  if (f.arity() <= kMaxShiftArity) std::cout << "pdt_depth_ub=" << build_tree(f).depth() << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_bf(out, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis, complexity bounds and protocol simulation for XOR functions"};
  app.require_subcommand(1, 1);

  std::string input;
  const std::string input_help = "function file (.bf or .ltf) or builtin:<family>:<arg>";

  auto* analyze = app.add_subcommand("analyze", "spectrum, measures and complexity bounds");
  analyze->add_option("input", input, input_help)->required();

  auto* rank = app.add_subcommand("rank", "communication matrix rank and one-way complexity");
  rank->add_option("input", input, input_help)->required();

  std::string out_path;
  auto* tree = app.add_subcommand("tree", "build a parity decision tree by spectrum folding");
  tree->add_option("input", input, input_help)->required();
  tree->add_option("--out", out_path, "write the tree to this file");

  int scan_n = 0;
  std::uint64_t sample = 0;
  std::uint64_t seed = kDefaultSeed;
  bool quiet = false;
  auto* scan = app.add_subcommand("conjecture-scan", "measure the best support-overlapping shift");
  scan->add_option("--n", scan_n, "arity")->required()->check(CLI::Range(1, 12));
  auto* sample_opt = scan->add_option("--sample", sample, "random functions instead of all (needed above n=4)")
                         ->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "random seed");
  scan->add_flag("--quiet", quiet, "print only the summary");

  SimulationConfig sim;
  std::string protocol = "grolmusz";
  std::string pairs = "all";
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo success rates of an SMP protocol");
  simulate_cmd->add_option("input", input, input_help)->required();
  simulate_cmd->add_option("--protocol", protocol, "grolmusz, near-parity or ltf")
      ->check(CLI::IsMember({"grolmusz", "near-parity", "ltf"}));
  simulate_cmd->add_option("--seed", sim.seed, "random seed");
  simulate_cmd->add_option("--runs", sim.runs, "runs per input pair")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--delta", sim.delta, "target error of the spectral protocol")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--c", sim.c, "sample-count constant of the LTF protocol")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--pairs", pairs, "all or sample:<count>");

  int address_bits = 1;
  auto* addressing = app.add_subcommand("addressing", "addressing function facts and VC witness");
  addressing->add_option("--m", address_bits, "address bits")->required()->check(CLI::Range(1, 4));
  addressing->add_option("--out", out_path, "write the truth table to this .bf file");

  int sweep_n = 0;
  auto* sweep = app.add_subcommand("sweep", "all functions on n <= 4 bits, one row each");
  sweep->add_option("--n", sweep_n, "arity")->required()->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(input);
    if (*rank) return cmd_rank(input);
    if (*tree) return cmd_tree(input, out_path);
    if (*scan) {
      return cmd_scan(scan_n, sample_opt->count() > 0 ? std::optional<std::uint64_t>(sample) : std::nullopt, seed, quiet);
    }
    if (*simulate_cmd) {
      sim.protocol = parse_protocol(protocol);
      sim.sample_pairs = parse_pairs(pairs);
      write_success_table(std::cout, simulate(resolve_input(input), sim));
      return 0;
    }
    if (*addressing) return cmd_addressing(address_bits, out_path);
    if (*sweep) {
      run_sweep(std::cout, sweep_n);
      return 0;
    }
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
