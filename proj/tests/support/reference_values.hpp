#pragma once

// Reference matrices and spectra for the balanced (a = b = 1/sqrt(2)) two-qubit
// family, as tabulated.

#include <array>

#include "qlattice/hilbert.hpp"

namespace qlattice::reference {

inline ComplexMatrix pi23w() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = 1.0;
  m(2, 2) = 1.0;
  return m;
}

inline ComplexMatrix pi23x() {
  ComplexMatrix m(4, 4);
  m << 1, 1, 0, 0,
       1, 1, 0, 0,
       0, 0, 1, -1,
       0, 0, -1, 1;
  return 0.5 * m;
}

inline ComplexMatrix pi23y() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

inline ComplexMatrix pi14z() {
  ComplexMatrix m(4, 4);
  m << 1, 0, 0, 1,
       0, 1, 1, 0,
       0, 1, 1, 0,
       1, 0, 0, 1;
  return 0.5 * m;
}

/// Tabulated spectrum of M, two decimal places.
inline constexpr std::array<double, 4> kBooleSpectrum = {-0.30, 0.45, 1.55, 2.30};
inline constexpr double kSpectrumTolerance = 0.005;

}  // namespace qlattice::reference
