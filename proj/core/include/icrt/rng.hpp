#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace icrt {

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic random stream. Streams are keyed by (root seed, tag, index)
// through std::seed_seq, whose output is fully specified by the standard, and
// all variates below are produced by explicit transforms of the raw 64-bit
// output, so a stream is reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0, 0) {}

  Rng(std::uint64_t root, std::uint64_t tag, std::uint64_t index) : root_(root) {
    std::seed_seq seq{lo(root), hi(root), lo(tag), hi(tag), lo(index), hi(index)};
    engine_.seed(seq);
  }

  static Rng stream(std::uint64_t root, std::string_view name, std::uint64_t index = 0) {
    return Rng(root, fnv1a(name), index);
  }

  std::uint64_t root_seed() const { return root_; }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard exponential.
  double exponential() { return -std::log1p(-uniform()); }

  double exponential(double rate) { return exponential() / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::mt19937_64 engine_;
  std::uint64_t root_;
};

}  // namespace icrt
