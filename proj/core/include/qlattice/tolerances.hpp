#pragma once

namespace qlattice {

/// Numerical cutoffs shared by every module.
///
/// `rank` is relative: a singular value counts when it exceeds `rank * sigma_max`.
/// The remaining cutoffs are absolute.
struct Tolerances {
  double rank = 1e-10;  ///< singular-value cutoff, relative to the largest one
  double eq = 1e-9;     ///< Frobenius distance below which matrices are equal
  double norm = 1e-12;  ///< allowed deviation of a state norm from 1
  double prob = 1e-12;  ///< probabilities at or below this are treated as zero
  double ineq = 1e-9;   ///< slack granted to inequality checks

  /// Throws InvalidInput unless every cutoff is finite and strictly positive.
  void validate() const;
};

}  // namespace qlattice
