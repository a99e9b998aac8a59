#pragma once

// Quantum corrections to the Boole, Chung-Erdos and Frechet inequalities.
//
// For subspaces h1, h2 the correction operator
//   D(h1, h2) = Pi(h1 v h2) - Pi(h1) - Pi(h2) + Pi(h1 ^ h2)
// is the failure of inclusion-exclusion. It is traceless and Hermitian, vanishes
// when the projectors commute, and satisfies [Pi1, Pi2] = D (Pi1 - Pi2).

#include <span>

#include "qlattice/hilbert.hpp"

namespace qlattice {

struct CorrectionOperator {
  ComplexMatrix matrix;
  double trace = 0.0;
};

struct ConditionFlags {
  bool projectors_commute = false;
  bool state_in_meet = false;
  bool state_in_perp_join = false;

  bool any() const noexcept { return projectors_commute || state_in_meet || state_in_perp_join; }
};

/// Every scalar that enters the quantum Boole / Chung-Erdos sandwich
///   b_lower <= p_join <= b_upper.
struct BoundsReport {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_meet = 0.0;
  double p_join = 0.0;
  double d_value = 0.0;  ///< <s|D(h1,h2)|s>
  double b_lower = 0.0;
  double b_upper = 0.0;
  double classical_lower = 0.0;
  double classical_upper = 0.0;
  ConditionFlags conditions;
};

/// Signed slack of the classical inequalities. Negative means violated.
struct ClassicalMargins {
  double upper = 0.0;  ///< p1 + p2 - p_join
  double lower = 0.0;  ///< p_join - (p1 + p2)^2 / (p1 + p2 + 2 p_meet)
};

struct FrechetSumReport {
  double sum = 0.0;              ///< sum_i p[Pi(h_i)]
  double complement_sum = 0.0;   ///< sum_i p[Pi(h_i^perp)]
  double complement_join = 0.0;  ///< p[Pi(v_i h_i^perp)]
  bool boole_holds = false;
  bool frechet_holds = false;
};

CorrectionOperator correction_operator(const Subspace& h1, const Subspace& h2,
                                       const Tolerances& tol = {});

/// ||[Pi1, Pi2] - D (Pi1 - Pi2)||_F.
double commutator_residual(const Subspace& h1, const Subspace& h2, const Tolerances& tol = {});

BoundsReport quantum_bounds(const StateVector& s, const Subspace& h1, const Subspace& h2,
                            const Tolerances& tol = {});

ClassicalMargins classical_bounds_violation(const StateVector& s, const Subspace& h1,
                                            const Subspace& h2, const Tolerances& tol = {});

ConditionFlags sufficient_conditions(const StateVector& s, const Subspace& h1, const Subspace& h2,
                                     const Tolerances& tol = {});

/// 1 - <s|D(h1,h2)|s> - p1 - p2, evaluated through the complements. Requires h1 ^ h2 = O.
double quantum_frechet(const StateVector& s, const Subspace& h1, const Subspace& h2,
                       const Tolerances& tol = {});

/// Classical Frechet bound sum p_i <= n - 1 together with the Boole hypothesis on
/// the complements that implies it. Requires the meet of all `hs` to be O.
FrechetSumReport frechet_sum_check(const StateVector& s, std::span<const Subspace> hs,
                                   const Tolerances& tol = {});

// Classical reference formulas.

/// p(A) + p(B).
double boole_upper(double p1, double p2);
/// (p(A) + p(B))^2 / (p(A) + p(B) + 2 p(A ^ B)), or 0 when the denominator is <= tol_p.
double chung_erdos_lower(double p_sum, double p_meet, double tol_p);

}  // namespace qlattice
