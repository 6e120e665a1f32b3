#ifndef XORCOMM_RANDOM_HPP
#define XORCOMM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace xorcomm {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed2024ULL;

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Engine = std::mt19937_64;

/// Public coins shared by Alice, Bob and the referee for one protocol run.
///
/// The stream is a pure function of (seed, run index): every party that
/// calls engine() reads the same bits, and no party has private randomness.
class SharedRandomness {
 public:
  explicit SharedRandomness(std::uint64_t seed, std::uint64_t run = 0) : seed_(seed), run_(run) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t run() const { return run_; }

  Engine engine() const { return Engine(mix64(seed_ ^ mix64(run_ + 0x632be59bd9b4e019ULL))); }

  /// An unrelated stream for auxiliary draws (e.g. choosing input pairs).
  SharedRandomness derive(std::uint64_t tag) const { return SharedRandomness(mix64(seed_ + mix64(tag)), run_); }

 private:
  std::uint64_t seed_;
  std::uint64_t run_;
};

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform53(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection, exact for any bound > 0.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  // [threshold, 2^64) holds a whole number of copies of [0, bound).
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
  std::uint64_t v = eng();
  while (v < threshold) v = eng();
  return v % bound;
}

inline bool bernoulli(Engine& eng, double p) { return uniform53(eng) < p; }

}  // namespace xorcomm

#endif  // XORCOMM_RANDOM_HPP
