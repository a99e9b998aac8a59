#pragma once

// Weyl-Heisenberg structure over Z(d) x Z(d) for odd d, coherent projector
// families and the coherent-POVM rank-reduction bound.
//
//   F_{nm} = d^{-1/2} w(mn),  Z = diag w(m),  X|m> = |m+1>,  w(k) = exp(2 pi i k / d)
//   D(alpha, beta) = Z^alpha X^beta w(-2^{-1} alpha beta)
//   Pi(alpha, beta) = D Pi(0,0) D^dagger
//
// With these conventions F^dagger Z F = X. A seed of trace t resolves the identity
// as (1 / (d t)) sum Pi(alpha, beta) = 1.

#include <vector>

#include "qlattice/bipartite.hpp"
#include "qlattice/hilbert.hpp"
#include "qlattice/measurement.hpp"

namespace qlattice {

class WeylSystem {
 public:
  /// Throws UnsupportedDimension unless d is odd and >= 3.
  explicit WeylSystem(int d, const Tolerances& tol = {});

  int d() const noexcept { return d_; }
  /// 2^{-1} in Z(d).
  int half() const noexcept { return half_; }
  Complex omega(long k) const;

  const ComplexMatrix& fourier() const noexcept { return fourier_; }
  const ComplexMatrix& z_op() const noexcept { return z_; }
  const ComplexMatrix& x_op() const noexcept { return x_; }

 private:
  int d_;
  int half_;
  ComplexMatrix fourier_;
  ComplexMatrix z_;
  ComplexMatrix x_;
};

/// Indices are reduced mod d.
ComplexMatrix displacement(const WeylSystem& sys, long alpha, long beta);

class CoherentFamily {
 public:
  const WeylSystem& system() const noexcept { return system_; }
  const Projector& seed() const noexcept { return members_.front(); }
  /// Index alpha * d + beta.
  const std::vector<Projector>& members() const noexcept { return members_; }
  const Projector& member(long alpha, long beta) const;
  Index trace() const noexcept { return seed().rank(); }

 private:
  friend CoherentFamily coherent_family(const WeylSystem&, const Projector&, const Tolerances&);
  CoherentFamily(WeylSystem sys, std::vector<Projector> members)
      : system_(std::move(sys)), members_(std::move(members)) {}

  WeylSystem system_;
  std::vector<Projector> members_;
};

/// Builds the d^2 displaced copies of `seed` and audits them: equal traces,
/// resolution of identity, pairwise distinct members. Seeds equal to a position
/// or momentum basis projector, or with trace outside 1..d-1, are rejected.
CoherentFamily coherent_family(const WeylSystem& sys, const Projector& seed,
                               const Tolerances& tol = {});

/// Projector onto the span of t Haar-random vectors.
Projector generic_seed(int d, int t, Rng& rng, const Tolerances& tol = {});

/// (1 / (d t)) sum_{alpha,beta} Pi(alpha, beta).
ComplexMatrix resolution_of_identity(const CoherentFamily& f);

/// Coherent POVM Pi_A(alpha,beta) (x) Pi_B(gamma,delta) with weights
/// 1 / (d_A t_A d_B t_B). Outcome (a, b) uses a = alpha d_A + beta,
/// b = gamma d_B + delta. upper_bound = (d_A - t_A) + (d_B - t_B).
RankReductionReport povm_measure(const BipartiteState& s, const CoherentFamily& fam_a,
                                 const CoherentFamily& fam_b, const Tolerances& tol = {});

}  // namespace qlattice
