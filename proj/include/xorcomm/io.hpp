#ifndef XORCOMM_IO_HPP
#define XORCOMM_IO_HPP

// Line-oriented text formats.
//
//   .bf   line 1: "n <k>"
//         line 2: 2^k characters from {0,1}; position i is f(index i)
//   .ltf  line 1: "n <k>"
//         line 2: "theta <decimal>"
//         line 3: "w <decimal> ... <decimal>"   (k values, non-increasing)
//
// Tokens on a line are separated by one or more spaces. A single newline
// after the last line is allowed; anything else after it is rejected.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "boolean_function.hpp"
#include "ltf.hpp"

namespace xorcomm {

/// Malformed input, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  std::string_view text;
  int number;
};

inline std::vector<Line> split_lines(std::string_view text, std::size_t expected) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  int number = 1;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back({text.substr(pos), number});
      pos = text.size();
    } else {
      lines.push_back({text.substr(pos, end - pos), number});
      pos = end + 1;
    }
    ++number;
  }
  if (lines.size() < expected) {
    throw ParseError(static_cast<int>(lines.size()) + 1, 1, "unexpected end of input");
  }
  if (lines.size() > expected) throw ParseError(lines[expected].number, 1, "trailing data after last line");
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.text.size(); ++i) {
      const auto c = static_cast<unsigned char>(line.text[i]);
      if (c < 0x20 || c > 0x7e) throw ParseError(line.number, static_cast<int>(i) + 1, "non-printable character");
    }
  }
  return lines;
}

inline std::vector<Token> tokenize(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto& t = line.text;
  while (i < t.size()) {
    if (t[i] == ' ') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < t.size() && t[i] != ' ') ++i;
    out.push_back({t.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline int parse_arity_line(const Line& line) {
  const auto tokens = tokenize(line);
  if (tokens.empty() || tokens[0].text != "n") throw ParseError(line.number, 1, "expected 'n <k>'");
  if (tokens.size() < 2) throw ParseError(line.number, static_cast<int>(line.text.size()) + 1, "missing arity");
  if (tokens.size() > 2) throw ParseError(line.number, tokens[2].column, "trailing garbage");
  int k = 0;
  const auto& tok = tokens[1];
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), k);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError(line.number, tok.column, "arity is not an integer");
  }
  try {
    BooleanFunction::check_arity(k, kDefaultArityCap);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, tok.column, e.what());
  }
  return k;
}

inline double parse_decimal(const Line& line, const Token& tok) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(v)) {
    throw ParseError(line.number, tok.column, "not a finite decimal: '" + std::string(tok.text) + "'");
  }
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline BooleanFunction parse_bf(std::string_view text) {
  const auto lines = detail::split_lines(text, 2);
  const int k = detail::parse_arity_line(lines[0]);
  const auto& body = lines[1];
  const std::size_t expected = std::size_t{1} << k;
  BitVector table(expected);
  for (std::size_t i = 0; i < body.text.size(); ++i) {
    const char c = body.text[i];
    if (i >= expected) throw ParseError(body.number, static_cast<int>(i) + 1, "trailing garbage after truth table");
    if (c != '0' && c != '1') throw ParseError(body.number, static_cast<int>(i) + 1, "expected '0' or '1'");
    table.set(i, c == '1');
  }
  if (body.text.size() < expected) {
    throw ParseError(body.number, static_cast<int>(body.text.size()) + 1,
                     "truth table has " + std::to_string(body.text.size()) + " entries, expected " +
                         std::to_string(expected));
  }
  return BooleanFunction(k, std::move(table));
}

inline LinearThresholdFunction parse_ltf(std::string_view text) {
  const auto lines = detail::split_lines(text, 3);
  const int k = detail::parse_arity_line(lines[0]);

  const auto theta_tokens = detail::tokenize(lines[1]);
  if (theta_tokens.empty() || theta_tokens[0].text != "theta") throw ParseError(lines[1].number, 1, "expected 'theta <decimal>'");
  if (theta_tokens.size() != 2) {
    throw ParseError(lines[1].number, theta_tokens.size() > 2 ? theta_tokens[2].column : static_cast<int>(lines[1].text.size()) + 1,
                     theta_tokens.size() > 2 ? "trailing garbage" : "missing threshold");
  }
  const double theta = detail::parse_decimal(lines[1], theta_tokens[1]);

  const auto w_tokens = detail::tokenize(lines[2]);
  if (w_tokens.empty() || w_tokens[0].text != "w") throw ParseError(lines[2].number, 1, "expected 'w <decimal> ...'");
  const std::size_t count = w_tokens.size() - 1;
  if (count > static_cast<std::size_t>(k)) throw ParseError(lines[2].number, w_tokens[static_cast<std::size_t>(k) + 1].column, "trailing garbage");
  if (count < static_cast<std::size_t>(k)) {
    throw ParseError(lines[2].number, static_cast<int>(lines[2].text.size()) + 1,
                     "expected " + std::to_string(k) + " weights, found " + std::to_string(count));
  }
  std::vector<double> weights;
  for (std::size_t i = 1; i < w_tokens.size(); ++i) {
    const double w = detail::parse_decimal(lines[2], w_tokens[i]);
    if (!(w > 0.0)) throw ParseError(lines[2].number, w_tokens[i].column, "weights must be positive");
    if (!weights.empty() && w > weights.back()) throw ParseError(lines[2].number, w_tokens[i].column, "weights must be non-increasing");
    weights.push_back(w);
  }
  try {
    return LinearThresholdFunction(std::move(weights), theta);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[1].number, theta_tokens[1].column, e.what());
  }
}

inline void write_bf(std::ostream& out, const BooleanFunction& f) {
  out << "n " << f.arity() << '\n' << f.to_string() << '\n';
}

inline void write_ltf(std::ostream& out, const LinearThresholdFunction& ltf) {
  out << "n " << ltf.arity() << '\n' << "theta " << detail::format_double(ltf.theta()) << '\n' << 'w';
  for (double w : ltf.weights()) out << ' ' << detail::format_double(w);
  out << '\n';
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Either kind of function file, chosen by the ".ltf" extension.
using FunctionSource = std::variant<BooleanFunction, LinearThresholdFunction>;

inline FunctionSource load_function_file(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ltf") == 0) return parse_ltf(text);
  return parse_bf(text);
}

}  // namespace xorcomm

#endif  // XORCOMM_IO_HPP
