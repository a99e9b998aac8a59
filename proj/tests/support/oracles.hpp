#pragma once

// Test-only oracles. Each one reaches its answer by a route that the library
// code under test does not use.

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "qlattice/hilbert.hpp"

namespace qlattice::oracle {

/// h1 ^ h2 as the null space of the stacked system [Pi1 - 1; Pi2 - 1], read off
/// the eigendecomposition of (1 - Pi1) + (1 - Pi2).
inline Subspace meet_by_nullspace(const Subspace& h1, const Subspace& h2) {
  const Index n = h1.ambient_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix q = (id - h1.projector().matrix()) + (id - h2.projector().matrix());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
  Index k = 0;
  while (k < n && es.eigenvalues()(k) < 1e-8) ++k;
  return Subspace::from_orthonormal(es.eigenvectors().leftCols(k), Tolerances{.eq = 1e-8});
}

/// min over unit (a, b) of the second singular value of a M1 + b M2, by grid
/// enumeration over |a| = cos(theta), arg(b / a) = phi.
inline double min_second_singular_value(const ComplexMatrix& m1, const ComplexMatrix& m2,
                                        int steps) {
  double best = 1e300;
  for (int i = 0; i <= steps; ++i) {
    const double theta = (M_PI / 2.0) * i / steps;
    for (int j = 0; j < steps; ++j) {
      const double phi = 2.0 * M_PI * j / steps;
      const ComplexMatrix m =
          std::cos(theta) * m1 + std::polar(std::sin(theta), phi) * m2;
      Eigen::JacobiSVD<ComplexMatrix> svd(m);
      best = std::min(best, svd.singularValues()(1));
    }
  }
  return best;
}

/// min over phases phi of ||v - e^{i phi} u||.
inline double phase_distance(const ComplexVector& u, const ComplexVector& v) {
  const Complex overlap = u.dot(v);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (v - phase * u).norm();
}

}  // namespace qlattice::oracle
