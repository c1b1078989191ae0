#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mgk {

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded generator. Substreams are keyed by (seed, tags...) so that e.g. the
// stream for dataset t does not depend on how many datasets exist.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static Rng substream(std::uint64_t seed,
                       std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = mix64(seed);
    for (auto tag : tags) h = mix64(h ^ mix64(tag + 0x632be59bd9b4e019ULL));
    return Rng(h);
  }

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Substream tags.
enum StreamTag : std::uint64_t {
  kPatternStream = 1,
  kPerturbStream = 2,
  kSampleStream = 3,
  kStarsStream = 4,
};

}  // namespace mgk
