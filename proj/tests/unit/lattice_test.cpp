#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qlattice/errors.hpp"
#include "qlattice/lattice.hpp"

namespace qlattice {
namespace {

ComplexVector e(Index n, Index i) { return ComplexMatrix::Identity(n, n).col(i); }

Subspace line(const ComplexVector& v) { return orthonormalize(v); }

Subspace line_at(double theta) {
  return line(ComplexVector{{std::cos(theta), std::sin(theta)}});
}

TEST(CorrectionOperator, VanishesForComplementPair) {
  Rng rng(1);
  const Subspace h = random_subspace(5, 2, rng);
  EXPECT_LE(correction_operator(h, complement(h)).matrix.norm(), 1e-9);
}

TEST(CorrectionOperator, VanishesForCommutingCoordinateSubspaces) {
  const Subspace h1 = orthonormalize(ComplexMatrix::Identity(4, 4).leftCols(2));
  const Subspace h2 = orthonormalize(ComplexMatrix::Identity(4, 4).middleCols(1, 2));
  EXPECT_LE(correction_operator(h1, h2).matrix.norm(), 1e-12);
}

// For two distinct lines u, v in C^2 the join is the plane and the meet is O,
// so D = 1 - P_u - P_v with eigenvalues +-|<u|v>|.
TEST(CorrectionOperator, TwoLinesHaveSymmetricSpectrum) {
  const double theta = M_PI / 6.0;
  const CorrectionOperator d = correction_operator(line_at(0.0), line_at(theta));
  const auto ev = hermitian_eigenvalues(d.matrix);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], -std::cos(theta), 1e-12);
  EXPECT_NEAR(ev[1], std::cos(theta), 1e-12);
  EXPECT_NEAR(ev[0] + ev[1], 0.0, 1e-12);
  EXPECT_NEAR(d.trace, 0.0, 1e-12);
}

TEST(CorrectionOperator, DimensionMismatchThrows) {
  EXPECT_THROW(correction_operator(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST(CommutatorResidual, SimpleCases) {
  const Subspace a = line(e(3, 0));
  const Subspace b = line(e(3, 1));
  EXPECT_LE(commutator_residual(a, b), 1e-15);
  Rng rng(2);
  const Subspace h = random_subspace(4, 2, rng);
  EXPECT_LE(commutator_residual(h, h), 1e-12);
  EXPECT_LE(commutator_residual(random_subspace(6, 3, rng), random_subspace(6, 2, rng)), 1e-9);
}

TEST(QuantumBounds, TightForComplementPair) {
  Rng rng(4);
  const Subspace h = random_subspace(4, 1, rng);
  const BoundsReport r = quantum_bounds(random_state(4, rng), h, complement(h));
  EXPECT_NEAR(r.b_lower, 1.0, 1e-9);
  EXPECT_NEAR(r.p_join, 1.0, 1e-9);
  EXPECT_NEAR(r.b_upper, 1.0, 1e-9);
}

TEST(QuantumBounds, StateInMeet) {
  Rng rng(5);
  const Index n = 6;
  const Subspace shared = random_subspace(n, 1, rng);
  const Subspace h1 = join(random_subspace(n, 2, rng), shared);
  const Subspace h2 = join(random_subspace(n, 2, rng), shared);
  const StateVector s(shared.basis().col(0));
  const BoundsReport r = quantum_bounds(s, h1, h2);
  EXPECT_TRUE(r.conditions.state_in_meet);
  EXPECT_NEAR(r.d_value, 0.0, 1e-9);
  const ClassicalMargins m = classical_bounds_violation(s, h1, h2);
  EXPECT_GE(m.upper, -1e-9);
  EXPECT_GE(m.lower, -1e-9);
}

TEST(QuantumBounds, LowerBoundVanishesWhenEverythingIsZero) {
  const Subspace h1 = line(e(3, 0));
  const Subspace h2 = line(e(3, 1));
  const BoundsReport r = quantum_bounds(StateVector(e(3, 2)), h1, h2);
  EXPECT_EQ(r.b_lower, 0.0);
  EXPECT_TRUE(r.conditions.state_in_perp_join);
  EXPECT_THROW(quantum_bounds(StateVector(e(2, 0)), h1, h2), DimensionMismatch);
}

TEST(ClassicalMargins, CommutingAndPerpJoin) {
  Rng rng(6);
  const Subspace h1 = orthonormalize(ComplexMatrix::Identity(4, 4).leftCols(2));
  const Subspace h2 = orthonormalize(ComplexMatrix::Identity(4, 4).middleCols(1, 2));
  const ClassicalMargins m = classical_bounds_violation(random_state(4, rng), h1, h2);
  EXPECT_GE(m.upper, -1e-9);
  EXPECT_GE(m.lower, -1e-9);

  const Subspace g1 = line(ComplexVector{{1.0, 1.0, 0.0}});
  const Subspace g2 = line(ComplexVector{{1.0, 0.0, 0.0}});
  const ClassicalMargins p = classical_bounds_violation(StateVector(e(3, 2)), g1, g2);
  EXPECT_GE(p.upper, -1e-9);
  EXPECT_GE(p.lower, -1e-9);
}

// Two close lines in C^2: the join is the whole plane, so p_join = 1 while
// p1 + p2 can be made small by a state almost orthogonal to both.
TEST(ClassicalMargins, NoncommutingPairBreaksClassicalBoole) {
  const Subspace h1 = line_at(0.0);
  const Subspace h2 = line_at(0.2);
  const StateVector s(ComplexVector{{-std::sin(0.1), std::cos(0.1)}});
  const ClassicalMargins m = classical_bounds_violation(s, h1, h2);
  EXPECT_LT(m.upper, -0.5);
  const BoundsReport r = quantum_bounds(s, h1, h2);
  EXPECT_LE(r.p_join, r.b_upper + 1e-9);
  EXPECT_GT(r.d_value, 0.5);
}

TEST(SufficientConditions, Flags) {
  const Subspace a = line(e(3, 0));
  const Subspace b = line(e(3, 1));
  EXPECT_TRUE(sufficient_conditions(StateVector(e(3, 0)), a, b).projectors_commute);

  Rng rng(7);
  const ConditionFlags generic =
      sufficient_conditions(random_state(5, rng), random_subspace(5, 2, rng), random_subspace(5, 2, rng));
  EXPECT_FALSE(generic.any());
}

TEST(QuantumFrechet, Cases) {
  Rng rng(8);
  const Subspace h = random_subspace(4, 2, rng);
  EXPECT_NEAR(quantum_frechet(random_state(4, rng), h, complement(h)), 0.0, 1e-9);

  for (int i = 0; i < 50; ++i) {
    Rng r = rng.child(i);
    const Subspace u = random_subspace(2, 1, r);
    const Subspace v = random_subspace(2, 1, r);
    EXPECT_GE(quantum_frechet(random_state(2, r), u, v), -1e-9);
  }

  const Subspace a = line(e(3, 0));
  const Subspace b = line(e(3, 1));
  EXPECT_NEAR(quantum_frechet(StateVector(e(3, 2)), a, b), 1.0, 1e-12);

  EXPECT_THROW(quantum_frechet(StateVector(e(3, 0)), a, a), PreconditionError);
}

TEST(FrechetSum, ComplementPair) {
  Rng rng(9);
  const Subspace h = random_subspace(3, 1, rng);
  const std::vector<Subspace> hs{h, complement(h)};
  const FrechetSumReport r = frechet_sum_check(random_state(3, rng), hs);
  EXPECT_NEAR(r.sum, 1.0, 1e-9);
  EXPECT_TRUE(r.boole_holds);
  EXPECT_TRUE(r.frechet_holds);

  const std::vector<Subspace> bad{h, h};
  EXPECT_THROW(frechet_sum_check(random_state(3, rng), bad), PreconditionError);
}

TEST(ClassicalReferences, Formulas) {
  EXPECT_DOUBLE_EQ(boole_upper(0.25, 0.5), 0.75);
  EXPECT_DOUBLE_EQ(chung_erdos_lower(1.0, 0.5, 1e-12), 0.5);
  EXPECT_DOUBLE_EQ(chung_erdos_lower(0.0, 0.0, 1e-12), 0.0);
}

// Random triples over dimensions 2..12, a third of them built so that one of
// the sufficient conditions holds.
TEST(LatticeProperty, RandomTriples) {
  Rng master(31337);
  int positive = 0;
  int negative = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng rng = master.child(trial);
    const Index n = 2 + static_cast<Index>(rng.uniform() * 11);
    const Subspace h1 = random_subspace(n, 1 + static_cast<Index>(rng.uniform() * n), rng);
    const Subspace h2 = random_subspace(n, 1 + static_cast<Index>(rng.uniform() * n), rng);
    const StateVector s = random_state(n, rng);

    const CorrectionOperator d = correction_operator(h1, h2);
    EXPECT_NEAR(d.trace, 0.0, 1e-9 * n);
    EXPECT_LE(hermiticity_defect(d.matrix), 1e-9);
    EXPECT_LE(commutator_residual(h1, h2), 1e-9);
    const CorrectionOperator dc = correction_operator(complement(h1), complement(h2));
    EXPECT_LE((dc.matrix + d.matrix).norm(), 1e-9);

    const BoundsReport r = quantum_bounds(s, h1, h2);
    EXPECT_LE(r.b_lower, r.p_join + 1e-9) << "trial " << trial;
    EXPECT_LE(r.p_join, r.b_upper + 1e-9) << "trial " << trial;
    if (r.conditions.any()) {
      EXPECT_LE(std::abs(r.d_value), 1e-9);
      const ClassicalMargins m = classical_bounds_violation(s, h1, h2);
      EXPECT_GE(m.upper, -1e-9);
      EXPECT_GE(m.lower, -1e-9);
    }

    if (commutator_norm(h1.projector().matrix(), h2.projector().matrix()) > 1e-3) {
      const auto ev = hermitian_eigenvalues(d.matrix);
      if (ev.front() < -1e-8) ++negative;
      if (ev.back() > 1e-8) ++positive;
      EXPECT_TRUE(ev.front() < -1e-8 && ev.back() > 1e-8) << "trial " << trial;
    }
  }
  EXPECT_GT(positive, 0);
  EXPECT_GT(negative, 0);
}

}  // namespace
}  // namespace qlattice
