#ifndef XORCOMM_PARITY_TREE_HPP
#define XORCOMM_PARITY_TREE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "boolean_function.hpp"
#include "fourier.hpp"

namespace xorcomm {

/// Largest arity for which the support autocorrelation fits in 64 bits.
inline constexpr int kMaxShiftArity = 20;

/// |supp(fhat) ∩ supp(fhat^{ΔT})|.
inline std::uint64_t shift_intersection(const FourierSpectrum& spec, SubsetMask t) {
  if ((t.bits & ~low_mask(spec.arity())) != 0) throw std::invalid_argument("mask has more than n bits");
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < spec.size(); ++s) count += spec.in_support(s) && spec.in_support(s ^ t.bits);
  return count;
}

/// shift_intersection for every T at once: the autocorrelation of the
/// support indicator, computed as WHT(WHT(1_supp)^2) / 2^n.
inline std::vector<std::int64_t> support_autocorrelation(const FourierSpectrum& spec) {
  if (spec.arity() > kMaxShiftArity) throw std::invalid_argument("arity too large for shift search");
  std::vector<std::int64_t> v(spec.size());
  for (std::uint64_t s = 0; s < spec.size(); ++s) v[s] = spec.in_support(s) ? 1 : 0;
  walsh_hadamard(std::span<std::int64_t>(v));
  for (auto& x : v) x *= x;
  walsh_hadamard(std::span<std::int64_t>(v));
  for (auto& x : v) x >>= spec.arity();
  return v;
}

struct ShiftChoice {
  std::optional<SubsetMask> mask;  // empty when no nonempty T overlaps the support
  std::uint64_t size = 0;
};

/// The nonempty T maximizing shift_intersection, smallest mask on ties.
inline ShiftChoice best_shift(const FourierSpectrum& spec) {
  if (spec.support_size() == 0) throw std::invalid_argument("empty spectrum");
  const auto counts = support_autocorrelation(spec);
  ShiftChoice best;
  for (std::uint64_t t = 1; t < counts.size(); ++t) {
    const auto c = static_cast<std::uint64_t>(counts[t]);
    if (c > best.size) best = {SubsetMask{t}, c};
  }
  return best;
}

/// Spectrum of g, where g = f on the half-cube chi_T(x) = r and
/// g(x) = f(x xor t) elsewhere:
///   ghat(S) = (1 + chi_S(t))/2 * (fhat(S) + r fhat(S Δ T)).
/// Requires chi_T(t) = -1 and r = +-1.
inline FourierSpectrum fold(const FourierSpectrum& spec, SubsetMask t_mask, std::uint64_t t, int r) {
  if (r != 1 && r != -1) throw std::invalid_argument("r must be +1 or -1");
  if ((t & ~low_mask(spec.arity())) != 0 || (t_mask.bits & ~low_mask(spec.arity())) != 0) {
    throw std::invalid_argument("argument has more than n bits");
  }
  if (character(t_mask, t) != -1) throw std::invalid_argument("fold needs chi_T(t) = -1");
  std::vector<std::int64_t> out(spec.size(), 0);
  for (std::uint64_t s = 0; s < spec.size(); ++s) {
    if (inner_product(s, t) == 0) out[s] = spec[s] + r * spec[s ^ t_mask.bits];
  }
  return FourierSpectrum(spec.arity(), std::move(out));
}

/// Decision tree whose internal nodes query chi_T(x). Child 0 follows the
/// answer +1 (even parity), child 1 the answer -1.
class ParityDecisionTree {
 public:
  struct Node {
    bool leaf = true;
    bool value = false;  // leaves: the output bit
    SubsetMask query;    // internal nodes: nonempty
    std::uint32_t child[2] = {0, 0};
  };

  ParityDecisionTree() { nodes_.push_back(Node{}); }

  static ParityDecisionTree from_nodes(std::vector<Node> nodes) {
    ParityDecisionTree t;
    t.nodes_ = std::move(nodes);
    t.validate();
    return t;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }

  bool evaluate(std::uint64_t x) const {
    const Node* node = &nodes_[0];
    while (!node->leaf) node = &nodes_[node->child[inner_product(node->query.bits, x)]];
    return node->value;
  }

  /// Longest root-to-leaf path.
  int depth() const { return depth_from(0); }

  /// Preorder lines: "Q <mask-hex>" for internal nodes (then the +1 subtree,
  /// then the -1 subtree) and "L <0|1>" for leaves.
  void serialize(std::ostream& out, int arity) const { serialize_from(out, 0, arity); }

  std::string to_string(int arity) const {
    std::ostringstream out;
    serialize(out, arity);
    return out.str();
  }

  /// Reads the preorder format back. Blank lines and lines starting with '#'
  /// are skipped.
  static ParityDecisionTree parse(std::istream& in) {
    std::vector<Node> nodes;
    std::vector<std::pair<std::uint32_t, int>> pending;  // (parent, next child slot)
    std::string line;
    int line_no = 0;
    bool done = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      if (done) throw std::invalid_argument("line " + std::to_string(line_no) + ": data after complete tree");
      if (line.size() < 3 || line[1] != ' ' || (line[0] != 'Q' && line[0] != 'L')) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'Q <hex>' or 'L <bit>'");
      }
      Node node;
      const std::string arg = line.substr(2);
      if (line[0] == 'L') {
        if (arg != "0" && arg != "1") throw std::invalid_argument("line " + std::to_string(line_no) + ": bad leaf");
        node.value = arg == "1";
      } else {
        std::size_t used = 0;
        std::uint64_t mask = 0;
        try {
          mask = std::stoull(arg, &used, 16);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != arg.size() || mask == 0) throw std::invalid_argument("line " + std::to_string(line_no) + ": bad query mask");
        node.leaf = false;
        node.query = SubsetMask{mask};
      }
      const auto index = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(node);
      if (!pending.empty()) {
        auto& [parent, slot] = pending.back();
        nodes[parent].child[slot] = index;
        if (++slot == 2) pending.pop_back();
      } else if (index != 0) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": data after complete tree");
      }
      if (!node.leaf) pending.emplace_back(index, 0);
      if (pending.empty()) done = true;
    }
    if (nodes.empty() || !pending.empty()) throw std::invalid_argument("incomplete tree");
    return from_nodes(std::move(nodes));
  }

 private:
  friend class TreeBuilder;

  void validate() const {
    for (const auto& n : nodes_) {
      if (n.leaf) continue;
      if (n.query.empty()) throw std::invalid_argument("parity tree query mask must be nonempty");
      if (n.child[0] >= nodes_.size() || n.child[1] >= nodes_.size()) throw std::invalid_argument("dangling child");
    }
  }

  int depth_from(std::uint32_t i) const {
    const Node& n = nodes_[i];
    if (n.leaf) return 0;
    return 1 + std::max(depth_from(n.child[0]), depth_from(n.child[1]));
  }

  void serialize_from(std::ostream& out, std::uint32_t i, int arity) const {
    const Node& n = nodes_[i];
    if (n.leaf) {
      out << "L " << (n.value ? '1' : '0') << '\n';
      return;
    }
    out << "Q " << to_hex(n.query.bits, arity) << '\n';
    serialize_from(out, n.child[0], arity);
    serialize_from(out, n.child[1], arity);
  }

  std::vector<Node> nodes_;
};

/// Greedy spectrum-folding builder.
///
/// At each node: a constant spectrum becomes a leaf; a single character
/// chi_S becomes one query of S. Otherwise T = best_shift, t = the lowest
/// bit of T, and the children are fold(spec, T, t, +1) and fold(spec, T, t, -1).
/// If a fold would not shrink the support, the node instead queries the
/// lowest variable the spectrum still depends on. Each fold zeroes every
/// coefficient containing the bit of t, so depth never exceeds n.
class TreeBuilder {
 public:
  struct Stats {
    std::uint64_t greedy_steps = 0;
    std::uint64_t fallback_steps = 0;
  };

  ParityDecisionTree build(const FourierSpectrum& spec) {
    tree_.nodes_.clear();
    arity_ = spec.arity();
    build_node(spec);
    return std::move(tree_);
  }

  const Stats& stats() const { return stats_; }

 private:
  std::uint32_t add(ParityDecisionTree::Node node) {
    tree_.nodes_.push_back(node);
    return static_cast<std::uint32_t>(tree_.nodes_.size() - 1);
  }

  static ParityDecisionTree::Node leaf(bool value) {
    ParityDecisionTree::Node n;
    n.value = value;
    return n;
  }

  std::uint32_t build_node(const FourierSpectrum& spec) {
    const auto support = spec.support();
    if (support.empty()) throw std::invalid_argument("empty spectrum");
    if (support.size() == 1) {
      const SubsetMask s = support[0];
      const bool negative = spec[s] < 0;
      if (s.empty()) return add(leaf(negative));
      // F = sign * chi_S: answer +1 gives F = sign, answer -1 gives -sign.
      ParityDecisionTree::Node q;
      q.leaf = false;
      q.query = s;
      const auto self = add(q);
      const auto plus = add(leaf(negative));
      const auto minus = add(leaf(!negative));
      tree_.nodes_[self].child[0] = plus;
      tree_.nodes_[self].child[1] = minus;
      return self;
    }

    const ShiftChoice choice = best_shift(spec);
    std::optional<std::pair<FourierSpectrum, FourierSpectrum>> children;
    SubsetMask query;
    if (choice.mask) {
      query = *choice.mask;
      const std::uint64_t t = query.bits & (~query.bits + 1);
      auto plus = fold(spec, query, t, 1);
      auto minus = fold(spec, query, t, -1);
      if (plus.support_size() < support.size() && minus.support_size() < support.size()) {
        children.emplace(std::move(plus), std::move(minus));
        ++stats_.greedy_steps;
      }
    }
    if (!children) {
      std::uint64_t used = 0;
      for (auto s : support) used |= s.bits;
      const std::uint64_t t = used & (~used + 1);
      query = SubsetMask{t};
      children.emplace(fold(spec, query, t, 1), fold(spec, query, t, -1));
      ++stats_.fallback_steps;
    }

    ParityDecisionTree::Node q;
    q.leaf = false;
    q.query = query;
    const auto self = add(q);
    const auto plus = build_node(children->first);
    const auto minus = build_node(children->second);
    tree_.nodes_[self].child[0] = plus;
    tree_.nodes_[self].child[1] = minus;
    return self;
  }

  ParityDecisionTree tree_;
  int arity_ = 0;
  Stats stats_;
};

/// Builds a parity decision tree for f. For n <= 12 the tree is checked
/// against f on every input and a mismatch throws VerificationError.
inline ParityDecisionTree build_tree(const BooleanFunction& f) {
  TreeBuilder builder;
  ParityDecisionTree tree = builder.build(wht(f));
  if (f.arity() <= 12) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      if (tree.evaluate(x) != f(x)) throw VerificationError("parity tree disagrees with f at input " + std::to_string(x));
    }
  }
  return tree;
}

/// Bits exchanged when Alice and Bob walk the tree on x xor y: two per query.
inline int tree_comm_cost(const ParityDecisionTree& tree) { return 2 * tree.depth(); }

/// One scanned function: its sparsity and best shift.
struct ScanRecord {
  std::uint64_t fn_index = 0;
  std::uint64_t support = 0;
  std::optional<SubsetMask> best_t;
  std::uint64_t intersection = 0;
  double ratio() const { return support == 0 ? 0.0 : static_cast<double>(intersection) / static_cast<double>(support); }
};

struct ConjectureScanReport {
  int n = 0;
  std::uint64_t scanned = 0;
  std::uint64_t contributing = 0;  // functions with ||fhat||_0 > 1
  std::optional<ScanRecord> witness;  // minimum ratio among contributing functions
  std::optional<BooleanFunction> witness_function;
  std::uint64_t zero_ratio_count = 0;  // contributing functions with ratio 0

  double min_ratio() const { return witness ? witness->ratio() : 1.0; }
};

inline ScanRecord scan_function(const BooleanFunction& f, std::uint64_t index) {
  const FourierSpectrum spec = wht(f);
  ScanRecord rec;
  rec.fn_index = index;
  rec.support = spec.support_size();
  const ShiftChoice choice = best_shift(spec);
  rec.best_t = choice.mask;
  rec.intersection = choice.size;
  return rec;
}

/// Measures, over all functions on n <= 4 bits (or `sample` random functions
/// for n <= 12), the best fraction of the support that survives a shift.
/// Exhaustive mode numbers functions by their truth table read as a binary
/// integer (bit x = f(x)). `on_record` is called in scan order.
inline ConjectureScanReport conjecture_scan(int n, std::optional<std::uint64_t> sample, std::uint64_t seed,
                                            const std::function<void(const ScanRecord&)>& on_record = {}) {
  if (n < 1 || n > 12) throw std::invalid_argument("conjecture scan supports 1 <= n <= 12");
  if (!sample && n > 4) throw std::invalid_argument("exhaustive scan needs n <= 4; pass a sample count");
  ConjectureScanReport report;
  report.n = n;
  const std::uint64_t table_size = std::uint64_t{1} << n;

  std::mt19937_64 rng(seed);
  const std::uint64_t total = sample ? *sample : (std::uint64_t{1} << table_size);
  for (std::uint64_t i = 0; i < total; ++i) {
    BitVector table(table_size);
    if (sample) {
      for (std::uint64_t x = 0; x < table_size; x += 64) {
        const std::uint64_t word = rng();
        for (std::uint64_t b = 0; b < 64 && x + b < table_size; ++b) table.set(x + b, (word >> b) & 1u);
      }
    } else {
      for (std::uint64_t x = 0; x < table_size; ++x) table.set(x, (i >> x) & 1u);
    }
    BooleanFunction f(n, std::move(table));
    const ScanRecord rec = scan_function(f, i);
    ++report.scanned;
    if (on_record) on_record(rec);
    if (rec.support <= 1) continue;
    ++report.contributing;
    if (rec.intersection == 0) ++report.zero_ratio_count;
    // Exact comparison of intersection / support.
    if (!report.witness || rec.intersection * report.witness->support < report.witness->intersection * rec.support) {
      report.witness = rec;
      report.witness_function = f;
    }
  }
  return report;
}

}  // namespace xorcomm

#endif  // XORCOMM_PARITY_TREE_HPP
