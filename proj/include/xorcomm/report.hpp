#ifndef XORCOMM_REPORT_HPP
#define XORCOMM_REPORT_HPP

// Text reports shared by the command-line tool and the tests. Everything
// here writes plain, deterministic text: key=value blocks or tab-separated
// rows.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "boolean_function.hpp"
#include "comm_matrix.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "ltf.hpp"
#include "parallel.hpp"
#include "parity_tree.hpp"
#include "protocols.hpp"

namespace xorcomm {

inline std::string format_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Resolves an input argument: a .bf/.ltf path, or a built-in of the form
///   builtin:<family>:<arg>[:<scale>]
/// with family one of parity, and, or, majority, zero, const0, const1,
/// addressing (arg = m), majority-ltf (arg = odd n, optional weight scale).
inline FunctionSource resolve_input(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.rfind(prefix, 0) != 0) return load_function_file(spec);
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("builtin form is builtin:<family>:<arg>[:<scale>]");
  const std::string& family = parts[0];
  int arg = 0;
  try {
    std::size_t used = 0;
    arg = std::stoi(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("builtin argument is not an integer: " + parts[1]);
  }
  if (family == "majority-ltf") {
    double scale = 1.0;
    if (parts.size() == 3) scale = std::stod(parts[2]);
    return majority_ltf(arg, scale);
  }
  if (parts.size() == 3) throw std::invalid_argument("only majority-ltf takes a scale");
  if (family == "parity") return parity_function(arg);
  if (family == "and") return and_function(arg);
  if (family == "or") return or_function(arg);
  if (family == "majority") return majority_function(arg);
  if (family == "zero") return zero_indicator(arg);
  if (family == "const0") return constant_function(arg, false);
  if (family == "const1") return constant_function(arg, true);
  if (family == "addressing") return addressing_function(arg);
  throw std::invalid_argument("unknown builtin family: " + family);
}

inline BooleanFunction as_function(const FunctionSource& src) {
  if (const auto* f = std::get_if<BooleanFunction>(&src)) return *f;
  return ltf_realize(std::get<LinearThresholdFunction>(src));
}

/// Full per-function report: spectrum norms, measures and complexity bounds.
inline void write_analysis(std::ostream& out, const FunctionSource& src) {
  using detail::format_double;
  const BooleanFunction f = as_function(src);
  const auto* ltf = std::get_if<LinearThresholdFunction>(&src);
  const FourierSpectrum spec = wht(f);
  out << "n=" << f.arity() << '\n'
      << "sparsity=" << spec.support_size() << '\n'
      << "l1=" << format_double(spectral_norm(spec, Norm::L1)) << '\n'
      << "linf=" << format_double(spectral_norm(spec, Norm::Linf)) << '\n'
      << "sensitivity=" << sensitivity(f) << '\n'
      << "f2_degree=" << f2_degree(f) << '\n'
      << "monotone=" << (is_monotone(f) ? "true" : "false") << '\n';
  if (ltf != nullptr) {
    out << "theta=" << format_double(ltf->theta()) << '\n'
        << "m0=" << format_double(ltf->m0()) << '\n'
        << "m1=" << format_double(ltf->m1()) << '\n'
        << "margin=" << format_double(ltf->margin()) << '\n';
  }
  write_bounds(out, bounds_report(f, ltf));
  if (f.arity() <= kMaxShiftArity) {
    const auto tree = build_tree(f);
    out << "pdt_depth_ub=" << tree.depth() << '\n' << "cc_ub_tree=" << tree_comm_cost(tree) << '\n';
  }
}

inline void write_sweep_header(std::ostream& out) {
  out << "# index\ttable\tsparsity\tl1\tlinf\tdim\tsensitivity\tf2_degree\tmonotone\trank\tdistinct_rows\n";
}

/// One sweep row. The rank is cross-checked by elimination (n <= 5) and the
/// distinct-row count against 2^{dim f}; mismatches throw VerificationError.
inline std::string sweep_row(const BooleanFunction& f, std::uint64_t index) {
  using detail::format_double;
  const FourierSpectrum spec = wht(f);
  const std::uint64_t rank = matrix_rank(f);
  const int dim = one_way_complexity(f);
  std::ostringstream row;
  row << index << '\t' << f.to_string() << '\t' << spec.support_size() << '\t'
      << format_double(spectral_norm(spec, Norm::L1)) << '\t' << format_double(spectral_norm(spec, Norm::Linf)) << '\t'
      << dim << '\t' << sensitivity(f) << '\t' << f2_degree(f) << '\t' << (is_monotone(f) ? 1 : 0) << '\t' << rank
      << '\t' << distinct_rows(f) << '\n';
  return row.str();
}

/// Every function on n <= 4 bits, numbered by its table read as a binary
/// integer. Rows are produced in parallel batches and written in index order.
inline std::uint64_t run_sweep(std::ostream& out, int n, unsigned workers = worker_count()) {
  if (n < 1 || n > 4) throw std::invalid_argument("exhaustive sweep needs 1 <= n <= 4");
  const std::uint64_t table_size = std::uint64_t{1} << n;
  const std::uint64_t total = std::uint64_t{1} << table_size;
  constexpr std::uint64_t kBatch = 4096;
  write_sweep_header(out);
  std::vector<std::string> rows;
  for (std::uint64_t start = 0; start < total; start += kBatch) {
    const std::uint64_t count = std::min(kBatch, total - start);
    rows.assign(count, {});
    parallel_blocks(count, workers, [&](std::uint64_t b, std::uint64_t e, unsigned) {
      for (std::uint64_t i = b; i < e; ++i) {
        const std::uint64_t index = start + i;
        const auto f = BooleanFunction::tabulate(n, [index](std::uint64_t x) { return ((index >> x) & 1u) != 0; });
        rows[i] = sweep_row(f, index);
      }
    });
    for (const auto& r : rows) out << r;
  }
  return total;
}

inline void write_scan_header(std::ostream& out) { out << "# fn-index\tsupport\tbest-T\tratio\n"; }

inline void write_scan_record(std::ostream& out, const ScanRecord& rec, int n) {
  out << rec.fn_index << '\t' << rec.support << '\t' << (rec.best_t ? to_hex(rec.best_t->bits, n) : std::string("-"))
      << '\t' << format_rate(rec.ratio()) << '\n';
}

inline void write_scan_summary(std::ostream& out, const ConjectureScanReport& r) {
  out << "summary\tn=" << r.n << "\tscanned=" << r.scanned << "\tcontributing=" << r.contributing;
  if (r.witness) {
    out << "\tmin_ratio=" << format_rate(r.witness->ratio()) << "\twitness_index=" << r.witness->fn_index
        << "\twitness_table=" << r.witness_function->to_string() << "\twitness_support=" << r.witness->support
        << "\twitness_T=" << (r.witness->best_t ? to_hex(r.witness->best_t->bits, r.n) : std::string("-"));
  } else {
    out << "\tmin_ratio=-";
  }
  out << "\tzero_ratio=" << r.zero_ratio_count << '\n';
}

inline void write_success_table(std::ostream& out, const SuccessTable& t) {
  out << "# x\ty\tsuccesses\truns\trate\tcost\n";
  for (std::size_t i = 0; i < t.pairs.size(); ++i) {
    const auto& p = t.pairs[i];
    out << to_hex(p.x, t.arity) << '\t' << to_hex(p.y, t.arity) << '\t' << p.successes << '\t' << t.runs << '\t'
        << format_rate(t.rate(i)) << '\t' << t.cost << '\n';
  }
  if (t.pairs.empty()) return;
  const std::size_t w = t.worst();
  out << "summary\tpairs=" << t.pairs.size() << "\truns=" << t.runs << "\tcost=" << t.cost
      << "\tworst_x=" << to_hex(t.pairs[w].x, t.arity) << "\tworst_y=" << to_hex(t.pairs[w].y, t.arity)
      << "\tworst_rate=" << format_rate(t.rate(w)) << "\tmean_rate=" << format_rate(t.mean_rate()) << '\n';
}

enum class ProtocolKind { Grolmusz, NearParity, Ltf };

struct SimulationConfig {
  ProtocolKind protocol = ProtocolKind::Grolmusz;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t runs = 100;
  double delta = 1.0 / 6.0;
  double c = 48.0;
  std::optional<std::uint64_t> sample_pairs;  // empty: all pairs
};

inline ProtocolKind parse_protocol(const std::string& name) {
  if (name == "grolmusz") return ProtocolKind::Grolmusz;
  if (name == "near-parity") return ProtocolKind::NearParity;
  if (name == "ltf") return ProtocolKind::Ltf;
  throw std::invalid_argument("unknown protocol: " + name);
}

/// Parses "all" or "sample:<count>".
inline std::optional<std::uint64_t> parse_pairs(const std::string& text) {
  if (text == "all") return std::nullopt;
  constexpr std::string_view prefix = "sample:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && !digits.empty() && digits[0] != '-' && v > 0) return v;
  }
  throw std::invalid_argument("--pairs must be 'all' or 'sample:<count>'");
}

/// Runs the configured protocol over the configured pairs and returns the table.
inline SuccessTable simulate(const FunctionSource& src, const SimulationConfig& cfg, unsigned workers = worker_count()) {
  const int n = std::visit([](const auto& f) { return f.arity(); }, src);
  const std::vector<InputPair> pairs =
      cfg.sample_pairs ? sample_pairs(n, *cfg.sample_pairs, SharedRandomness(cfg.seed)) : all_pairs(n);
  switch (cfg.protocol) {
    case ProtocolKind::Grolmusz:
      return monte_carlo_success(GrolmuszProtocol(wht(as_function(src)), cfg.delta), pairs, cfg.runs, cfg.seed, workers);
    case ProtocolKind::NearParity:
      return monte_carlo_success(NearParityProtocol(as_function(src)), pairs, cfg.runs, cfg.seed, workers);
    case ProtocolKind::Ltf: {
      const auto* ltf = std::get_if<LinearThresholdFunction>(&src);
      if (ltf == nullptr) throw std::invalid_argument("the ltf protocol needs an .ltf input");
      return monte_carlo_success(LtfProtocol(*ltf, cfg.c), pairs, cfg.runs, cfg.seed, workers);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace xorcomm

#endif  // XORCOMM_REPORT_HPP
