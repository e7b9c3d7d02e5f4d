#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fakedet {

// splitmix64 finalizer; scrambles raw seeds and derives stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream));
}

// mt19937_64 plus hand-rolled samplers. The engine's output sequence is
// pinned by the standard; std::*_distribution algorithms are not, so the
// samplers below keep generated datasets reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Inclusive range via rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full width
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
  }

  // Box-Muller, one value per call.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // exp(N(ln median, sigma)) — the median parameterization keeps profile
  // constants readable.
  double lognormal(double median, double sigma) {
    return std::exp(std::log(median) + sigma * normal());
  }

  // Exponential with the given median (rate = ln 2 / median).
  double exponential(double median) {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u) * median / std::log(2.0);
  }

  // Knuth's product method; large means split recursively so exp(-mean)
  // never underflows.
  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 60.0) {
      const double half = mean / 2.0;
      return poisson(half) + poisson(mean - half);
    }
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double product = uniform();
    while (product > limit) {
      ++k;
      product *= uniform();
    }
    return k;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fakedet
