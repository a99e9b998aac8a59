#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qlattice/chsh.hpp"
#include "qlattice/errors.hpp"
#include "qlattice/lattice.hpp"
#include "reference_values.hpp"

namespace qlattice {
namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

StateVector qubit(Complex x, Complex y) { return StateVector::normalized(ComplexVector{{x, y}}); }

ComplexMatrix pi(const Subspace& h) { return h.projector().matrix(); }

TEST(LocalUnitary, Validation) {
  EXPECT_THROW(LocalUnitary(1.0, 0.0), InvalidInput);
  EXPECT_THROW(LocalUnitary(0.0, 1.0), InvalidInput);
  EXPECT_THROW(LocalUnitary(1.0, 1.0), InvalidInput);
  const LocalUnitary u = LocalUnitary::balanced();
  const ComplexMatrix m = u.matrix();
  EXPECT_LE((m.adjoint() * m - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LE((m * ket0() - u.u0()).norm(), 1e-15);
  EXPECT_LE((m * ket1() - u.u1()).norm(), 1e-15);
}

TEST(BasisOrientation, ZeroIsSecondCoordinate) {
  EXPECT_EQ(ket0(), (ComplexVector{{0.0, 1.0}}));
  EXPECT_EQ(ket1(), (ComplexVector{{1.0, 0.0}}));
}

TEST(BuildFamily, BalancedPlanesAgreeWithReference) {
  const ChshFamily f = build_family(LocalUnitary::balanced());
  EXPECT_LE((pi(f.plane23(Setting::W)) - reference::pi23w()).norm(), 1e-12);
  EXPECT_LE((pi(f.plane23(Setting::X)) - reference::pi23x()).norm(), 1e-12);
  EXPECT_LE((pi(f.plane14(Setting::Z)) - reference::pi14z()).norm(), 1e-12);
}

// Direct construction of h23Y from its two product vectors
// U|0> (x) |1> and U|1> (x) |0>.
TEST(BuildFamily, Plane23YFromDefinition) {
  const LocalUnitary u = LocalUnitary::balanced();
  ComplexMatrix v(4, 2);
  v.col(0) = kron(u.u0(), ket1());
  v.col(1) = kron(u.u1(), ket0());
  const ComplexMatrix expected = v * v.adjoint();

  ComplexMatrix by_hand(4, 4);
  by_hand << 1, 0, 1, 0,
             0, 1, 0, -1,
             1, 0, 1, 0,
             0, -1, 0, 1;
  by_hand *= 0.5;
  EXPECT_LE((expected - by_hand).norm(), 1e-12);

  const ChshFamily f = build_family(u);
  EXPECT_LE((pi(f.plane23(Setting::Y)) - expected).norm(), 1e-12);
  // The tabulated diag(0, 1, 0, 1) is not this projector.
  EXPECT_GT((pi(f.plane23(Setting::Y)) - reference::pi23y()).norm(), 0.5);
}

TEST(BuildFamily, Invariants) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Complex a = rng.complex_normal();
    const Complex b = rng.complex_normal();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const ChshFamily f = build_family(LocalUnitary(a / n, b / n));
    for (Setting s : kSettings) {
      EXPECT_LE((pi(f.plane14(s)) + pi(f.plane23(s)) - ComplexMatrix::Identity(4, 4)).norm(), 1e-9);
      for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
          EXPECT_LE(std::abs(f.atom_vector(s, i).dot(f.atom_vector(s, j))), 1e-12);
        }
      }
      EXPECT_LE((pi(f.plane14(s)) - pi(f.atom(s, 1)) - pi(f.atom(s, 4))).norm(), 1e-9);
    }
    const Lemma1Dims dims = lemma1_check(f);
    EXPECT_EQ(dims.meet_dim, 0);
    EXPECT_EQ(dims.join_dim, 4);
  }
}

TEST(Lemma1, Balanced) {
  const Lemma1Dims dims = lemma1_check(build_family(LocalUnitary::balanced()));
  EXPECT_EQ(dims.meet_dim, 0);
  EXPECT_EQ(dims.join_dim, 4);
}

TEST(Omega, BothOnesReducesToProduct) {
  const LocalUnitary u = LocalUnitary::balanced();
  const StateVector one(ket1());
  const OmegaResult r = omega(one, one, u);
  EXPECT_DOUBLE_EQ(r.probs.p_a, 1.0);
  EXPECT_NEAR(r.omega, (1.0 - r.probs.p_a_prime) * (1.0 - r.probs.p_b_prime), 1e-15);
}

TEST(Omega, RandomProductStates) {
  const LocalUnitary u = LocalUnitary::balanced();
  const ChshFamily f = build_family(u);
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    const StateVector sa = random_state(2, rng);
    const StateVector sb = random_state(2, rng);
    const OmegaResult r = omega(sa, sb, u);
    EXPECT_GE(r.omega, -1e-9);
    const ChshReport rep = chsh_sum(BipartiteState::product(sa, sb), f);
    EXPECT_NEAR(rep.boole_sum - 1.0, 2.0 * r.omega, 1e-9);
    EXPECT_NEAR(rep.omega, r.omega, 1e-9);
    EXPECT_LE(rep.chsh_sum, 3.0 + 1e-9);
    EXPECT_NEAR(omega_prime(sa, sb, f), omega_prime_closed_form(r.probs), 1e-9);
  }
}

TEST(OmegaPrime, ClosedFormCases) {
  const LocalUnitary u = LocalUnitary::balanced();
  const ChshFamily f = build_family(u);
  const StateVector zero(ket0());
  const StateVector one(ket1());
  EXPECT_NEAR(omega_prime(one, zero, f), 0.5, 1e-12);
  EXPECT_NEAR(omega_prime(one, one, f), -0.5, 1e-12);
  EXPECT_NEAR(omega_prime(qubit(1.0, 1.0), one, f), 0.0, 1e-12);
}

TEST(OmegaPrime, TakesBothSigns) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    Rng r = rng.child(t);
    const Complex a = r.complex_normal();
    const Complex b = r.complex_normal();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const ChshFamily f = build_family(LocalUnitary(a / n, b / n));
    double lo = 1.0, hi = -1.0;
    for (int k = 0; k < 400; ++k) {
      const double v = omega_prime(random_state(2, r), random_state(2, r), f);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LT(lo, 0.0);
    EXPECT_GT(hi, 0.0);
  }
}

TEST(BooleMatrix, TraceAndHermiticity) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const Complex a = rng.complex_normal();
    const Complex b = rng.complex_normal();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const ComplexMatrix m = boole_matrix(LocalUnitary(a / n, b / n));
    EXPECT_NEAR(m.trace().real(), 4.0, 1e-9);
    EXPECT_LE(hermiticity_defect(m), 1e-12);
  }
}

// Assembled from the family, M has spectrum {1 - sqrt 2, 1, 1, 1 + sqrt 2}.
TEST(BooleMatrix, BalancedSpectrum) {
  const auto ev = hermitian_eigenvalues(boole_matrix(LocalUnitary::balanced()));
  const double r2 = std::sqrt(2.0);
  EXPECT_NEAR(ev[0], 1.0 - r2, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  EXPECT_NEAR(ev[2], 1.0, 1e-12);
  EXPECT_NEAR(ev[3], 1.0 + r2, 1e-12);
}

// The tabulated spectrum is what the four tabulated projectors give.
TEST(BooleMatrix, TabulatedSpectrumComesFromTabulatedProjectors) {
  const ComplexMatrix m = reference::pi23w() + reference::pi23x() + reference::pi23y() +
                          reference::pi14z() - ComplexMatrix::Identity(4, 4);
  const auto ev = hermitian_eigenvalues(m);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], reference::kBooleSpectrum[i], 0.01);
}

TEST(ChshSum, TwoPathsAgree) {
  const ChshFamily f = build_family(LocalUnitary::balanced());
  const ComplexMatrix m = boole_matrix(f);
  Rng rng(5);
  const BipartiteSpace sp(2, 2);
  std::vector<BipartiteState> states;
  states.emplace_back(sp, StateVector::normalized(kron(ket0(), ket0()) + kron(ket1(), ket1())));
  for (int t = 0; t < 200; ++t) states.emplace_back(sp, random_state(4, rng));
  for (const auto& s : states) {
    const ChshReport r = chsh_sum(s, f);
    EXPECT_NEAR(r.chsh_sum, 3.0 - expectation(s.state(), m), 1e-9);
    EXPECT_GE(r.chsh_sum, 0.0);
    EXPECT_LE(r.chsh_sum, 4.0 + 1e-9);
    EXPECT_EQ(r.violated, r.chsh_sum > 3.0 + 1e-9);
    for (Setting st : kSettings) {
      EXPECT_NEAR(prob(s.state(), f.plane14(st).projector()),
                  prob(s.state(), f.atom(st, 1).projector()) +
                      prob(s.state(), f.atom(st, 4).projector()),
                  1e-9);
    }
  }
}

TEST(FindViolation, Balanced) {
  const auto v = find_violation(LocalUnitary::balanced());
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(v->lambda_min, 1.0 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(v->chsh_sum, 2.0 + std::sqrt(2.0), 1e-9);
  EXPECT_GT(v->chsh_sum, 3.0);
  EXPECT_EQ(v->schmidt_rank, 2);

  const ChshFamily f = build_family(LocalUnitary::balanced());
  EXPECT_TRUE(chsh_sum(v->state, f).violated);
}

TEST(FindViolation, ProductStatesNeverViolate) {
  const ChshFamily f = build_family(LocalUnitary::balanced());
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    const BipartiteState s = BipartiteState::product(random_state(2, rng), random_state(2, rng));
    EXPECT_FALSE(chsh_sum(s, f).violated);
  }
}

TEST(Frechet, ChshFamilyWithProductAndViolatingStates) {
  const ChshFamily f = build_family(LocalUnitary::balanced());
  const std::vector<Subspace> hs{f.plane14(Setting::W), f.plane14(Setting::X),
                                 f.plane14(Setting::Y), f.plane23(Setting::Z)};
  Rng rng(7);
  const BipartiteState prod = BipartiteState::product(random_state(2, rng), random_state(2, rng));
  const FrechetSumReport ok = frechet_sum_check(prod.state(), hs);
  EXPECT_TRUE(ok.boole_holds);
  EXPECT_TRUE(ok.frechet_holds);

  const auto v = find_violation(LocalUnitary::balanced());
  ASSERT_TRUE(v.has_value());
  const FrechetSumReport bad = frechet_sum_check(v->state.state(), hs);
  EXPECT_FALSE(bad.frechet_holds);
  EXPECT_FALSE(bad.boole_holds);
}

}  // namespace
}  // namespace qlattice
