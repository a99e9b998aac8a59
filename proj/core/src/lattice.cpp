#include "qlattice/lattice.hpp"

#include <string>

#include "qlattice/errors.hpp"

namespace qlattice {

namespace {

struct PairGeometry {
  Projector p1;
  Projector p2;
  Projector p_join;
  Projector p_meet;
};

PairGeometry geometry(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  return {h1.projector(), h2.projector(), join(h1, h2, tol).projector(),
          meet(h1, h2, tol).projector()};
}

ComplexMatrix correction_matrix(const PairGeometry& g) {
  return g.p_join.matrix() - g.p1.matrix() - g.p2.matrix() + g.p_meet.matrix();
}

void require_state_dim(const StateVector& s, const Subspace& h) {
  if (s.dim() != h.ambient_dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(s.dim()) +
                            " does not match subspace dimension " +
                            std::to_string(h.ambient_dim()));
  }
}

}  // namespace

double boole_upper(double p1, double p2) { return p1 + p2; }

double chung_erdos_lower(double p_sum, double p_meet, double tol_p) {
  const double denom = p_sum + 2.0 * p_meet;
  if (denom <= tol_p) return 0.0;
  return p_sum * p_sum / denom;
}

CorrectionOperator correction_operator(const Subspace& h1, const Subspace& h2,
                                       const Tolerances& tol) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch("correction_operator: subspace dimensions differ");
  }
  ComplexMatrix d = correction_matrix(geometry(h1, h2, tol));
  const double tr = d.trace().real();
  return {std::move(d), tr};
}

double commutator_residual(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch("commutator_residual: subspace dimensions differ");
  }
  const PairGeometry g = geometry(h1, h2, tol);
  const ComplexMatrix& a = g.p1.matrix();
  const ComplexMatrix& b = g.p2.matrix();
  const ComplexMatrix lhs = a * b - b * a;
  const ComplexMatrix rhs = correction_matrix(g) * (a - b);
  return (lhs - rhs).norm();
}

BoundsReport quantum_bounds(const StateVector& s, const Subspace& h1, const Subspace& h2,
                            const Tolerances& tol) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch("quantum_bounds: subspace dimensions differ");
  }
  require_state_dim(s, h1);
  const PairGeometry g = geometry(h1, h2, tol);

  BoundsReport r;
  r.p1 = prob(s, g.p1);
  r.p2 = prob(s, g.p2);
  r.p_join = prob(s, g.p_join);
  r.p_meet = prob(s, g.p_meet);
  r.d_value = expectation(s, correction_matrix(g));

  const double corrected = r.p1 + r.p2 + r.d_value;
  r.b_upper = corrected;
  r.b_lower = chung_erdos_lower(corrected, r.p_meet, tol.prob);
  r.classical_upper = boole_upper(r.p1, r.p2);
  r.classical_lower = chung_erdos_lower(r.p1 + r.p2, r.p_meet, tol.prob);
  r.conditions = sufficient_conditions(s, h1, h2, tol);
  return r;
}

ClassicalMargins classical_bounds_violation(const StateVector& s, const Subspace& h1,
                                            const Subspace& h2, const Tolerances& tol) {
  const BoundsReport r = quantum_bounds(s, h1, h2, tol);
  return {r.classical_upper - r.p_join, r.p_join - r.classical_lower};
}

ConditionFlags sufficient_conditions(const StateVector& s, const Subspace& h1, const Subspace& h2,
                                     const Tolerances& tol) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch("sufficient_conditions: subspace dimensions differ");
  }
  require_state_dim(s, h1);
  const ComplexVector& v = s.amplitudes();
  const Subspace m = meet(h1, h2, tol);
  const Subspace j = join(h1, h2, tol);

  ConditionFlags f;
  f.projectors_commute = commutator_norm(h1.projector().matrix(), h2.projector().matrix()) <= tol.eq;
  f.state_in_meet = (m.basis() * (m.basis().adjoint() * v) - v).norm() <= tol.eq;
  f.state_in_perp_join = (j.basis().adjoint() * v).norm() <= tol.eq;
  return f;
}

double quantum_frechet(const StateVector& s, const Subspace& h1, const Subspace& h2,
                       const Tolerances& tol) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch("quantum_frechet: subspace dimensions differ");
  }
  require_state_dim(s, h1);
  if (!meet(h1, h2, tol).is_zero()) {
    throw PreconditionError("quantum_frechet: h1 ^ h2 must be the zero subspace");
  }
  // D(h1^perp, h2^perp) = -D(h1, h2)
  const Subspace c1 = complement(h1, tol);
  const Subspace c2 = complement(h2, tol);
  const double d_perp = expectation(s, correction_operator(c1, c2, tol).matrix);
  return 1.0 + d_perp - prob(s, h1.projector()) - prob(s, h2.projector());
}

FrechetSumReport frechet_sum_check(const StateVector& s, std::span<const Subspace> hs,
                                   const Tolerances& tol) {
  if (hs.empty()) throw InvalidInput("frechet_sum_check: need at least one subspace");
  const Index n = hs.front().ambient_dim();
  for (const auto& h : hs) {
    if (h.ambient_dim() != n) throw DimensionMismatch("frechet_sum_check: subspace dimensions differ");
  }
  require_state_dim(s, hs.front());

  Subspace common = hs.front();
  for (std::size_t i = 1; i < hs.size(); ++i) common = meet(common, hs[i], tol);
  if (!common.is_zero()) {
    throw PreconditionError("frechet_sum_check: the meet of all subspaces must be O");
  }

  FrechetSumReport r;
  Subspace complement_join = Subspace::zero(n);
  for (const auto& h : hs) {
    const Subspace c = complement(h, tol);
    r.sum += prob(s, h.projector());
    r.complement_sum += prob(s, c.projector());
    complement_join = join(complement_join, c, tol);
  }
  r.complement_join = prob(s, complement_join.projector());
  r.boole_holds = r.complement_sum >= r.complement_join - tol.ineq;
  r.frechet_holds = r.sum <= static_cast<double>(hs.size()) - 1.0 + tol.ineq;
  return r;
}

}  // namespace qlattice
