#ifndef XORCOMM_BITS_HPP
#define XORCOMM_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorcomm {

/// A cross-check between two independent computations disagreed.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Largest arity for which truth tables, spectra and exhaustive sweeps are
/// materialized.
inline constexpr int kDefaultArityCap = 24;

/// A subset S of [n] as a bit mask: bit i-1 is set iff i is in S.
struct SubsetMask {
  std::uint64_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t b) : bits(b) {}

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(int i) const { return (bits >> i) & 1u; }

  friend constexpr SubsetMask operator^(SubsetMask a, SubsetMask b) {
    return SubsetMask{a.bits ^ b.bits};
  }
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// Inner product <x, y> over F2.
constexpr int inner_product(std::uint64_t x, std::uint64_t y) {
  return std::popcount(x & y) & 1;
}

/// The character chi_S(x) = (-1)^{<S, x>}.
constexpr int character(SubsetMask s, std::uint64_t x) {
  return inner_product(s.bits, x) ? -1 : 1;
}

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Lowercase hex rendering of an n-bit value, zero padded to ceil(n/4) digits.
inline std::string to_hex(std::uint64_t v, int n) {
  static constexpr char digits[] = "0123456789abcdef";
  const int width = n <= 0 ? 1 : (n + 3) / 4;
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

/// Packed, growable bit vector. Used for truth tables and protocol messages.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false)
      : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
    trim();
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  void set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }

  void push_back(bool value) {
    if (size_ % 64 == 0) words_.push_back(0);
    ++size_;
    set(size_ - 1, value);
  }

  void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Number of positions where the two vectors differ. Sizes must match.
  friend std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
    }
    return c;
  }

  friend BitVector operator^(const BitVector& a, const BitVector& b) {
    BitVector out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] ^= b.words_[i];
    return out;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if ((*this)[i]) s[i] = '1';
    }
    return s;
  }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= low_mask(static_cast<int>(size_ % 64));
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace xorcomm

#endif  // XORCOMM_BITS_HPP
