#ifndef TSFSB_RNG_HPP
#define TSFSB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tsfsb {

/// SplitMix64 finalizer. Used to derive independent child seeds from a base
/// seed and an index so that per-series streams never overlap in practice.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Portable random source: std::mt19937_64 (whose output sequence is fixed by
/// the standard) with hand-written transforms, so draws are identical on every
/// conforming platform. std::*_distribution is deliberately not used because
/// its algorithms are implementation-defined.
///
///   uniform():  (bits >> 11 + 1) * 2^-53, in (0, 1]
///   gaussian(): Box-Muller, z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 uses sin;
///               the second variate is cached for the next call.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tsfsb

#endif  // TSFSB_RNG_HPP
