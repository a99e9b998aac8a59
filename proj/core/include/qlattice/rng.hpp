#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qlattice {

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed of child stream `index` under `master`. Pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Explicit, caller-owned random stream.
///
/// Parallel Monte Carlo code gives every trial its own `child(i)` so results do
/// not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  double normal();
  double uniform();  ///< in [0, 1)
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal();
  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qlattice
