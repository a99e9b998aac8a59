#include "qlattice/rng.hpp"

#include <cmath>


namespace qlattice {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

std::complex<double> Rng::complex_normal() {
  static const double kScale = 1.0 / std::sqrt(2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re * kScale, im * kScale};
}

}  // namespace qlattice
