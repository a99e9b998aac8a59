#pragma once

// Tensor-product structure of H_A (x) H_B.
//
// Product basis index convention: (i, j) -> i * d_B + j. A state's coefficient
// matrix M has M(i, j) equal to that amplitude, and its matrix rank is the
// Schmidt rank of the state.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qlattice/hilbert.hpp"

namespace qlattice {

class BipartiteSpace {
 public:
  /// Both factors need dimension >= 2.
  BipartiteSpace(Index d_a, Index d_b);

  Index d_a() const noexcept { return d_a_; }
  Index d_b() const noexcept { return d_b_; }
  Index dim() const noexcept { return d_a_ * d_b_; }

  friend bool operator==(const BipartiteSpace&, const BipartiteSpace&) = default;

 private:
  Index d_a_;
  Index d_b_;
};

/// d_A x d_B coefficient matrix of a vector of the product space.
ComplexMatrix coefficient_matrix(const ComplexVector& amplitudes, const BipartiteSpace& space);
/// Inverse of coefficient_matrix.
ComplexVector flatten_coefficients(const ComplexMatrix& coeff);

class BipartiteState {
 public:
  BipartiteState(const BipartiteSpace& space, const StateVector& state);

  static BipartiteState from_coefficients(const BipartiteSpace& space, const ComplexMatrix& coeff,
                                          const Tolerances& tol = {});
  /// Rescales a nonzero coefficient matrix to unit Frobenius norm.
  static BipartiteState normalized_from_coefficients(const BipartiteSpace& space,
                                                     const ComplexMatrix& coeff);
  static BipartiteState product(const StateVector& a, const StateVector& b);

  const BipartiteSpace& space() const noexcept { return space_; }
  const StateVector& state() const noexcept { return state_; }
  const ComplexVector& amplitudes() const noexcept { return state_.amplitudes(); }
  const ComplexMatrix& coefficients() const noexcept { return coeff_; }

 private:
  BipartiteSpace space_;
  StateVector state_;
  ComplexMatrix coeff_;
};

struct SchmidtData {
  std::vector<double> singular_values;  ///< descending
  Index rank = 0;
};

SchmidtData schmidt_rank(const BipartiteState& s, const Tolerances& tol = {});

/// hA (x) hB with basis {e_i (x) f_j}.
Subspace tensor_subspace(const Subspace& ha, const Subspace& hb, const Tolerances& tol = {});

struct MinRankOptions {
  int restarts = 64;
  int max_iterations = 2000;
};

struct MinRankResult {
  Index upper_bound = 0;
  std::optional<BipartiteState> witness;  ///< absent only for the zero subspace
  Index generic_rank = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Upper bound on rank(h) = min over nonzero v in h of the Schmidt rank of v.
///
/// Candidate ranks r = 1, 2, ... are tried in order. Each restart minimizes
/// sum_{i>r} sigma_i(M(c))^2 over unit coefficient vectors c by alternating
/// between the best rank-r column space and the best c. `converged` is set when
/// every restart at rank upper_bound - 1 failed.
MinRankResult min_rank(const Subspace& h, const BipartiteSpace& space, Rng& rng,
                       const MinRankOptions& options = {}, const Tolerances& tol = {});

/// Projector residuals of the six product-lattice identities:
///   h1A (x) (h1B ^ h2B) = h1 ^ g12,   (h1A ^ h2A) (x) h1B = h1 ^ g21,
///   (h1A ^ h2A) (x) (h1B ^ h2B) = h1 ^ g12 ^ g21 ^ h2,
/// and the same three with v in place of ^.
struct ProductLatticeResiduals {
  std::array<double, 6> residuals{};
  static constexpr std::array<std::string_view, 6> kNames = {
      "meet_b", "meet_a", "meet_both", "join_b", "join_a", "join_both"};
  double max() const noexcept;
};

ProductLatticeResiduals verify_product_lattice(const Subspace& h1a, const Subspace& h2a,
                                               const Subspace& h1b, const Subspace& h2b,
                                               const Tolerances& tol = {});

struct InclusionFlags {
  bool meet_inclusion = false;  ///< (h1A ^ h2A) (x) (h1B ^ h2B) < h1 ^ h2
  bool join_inclusion = false;  ///< (h1A v h2A) (x) (h1B v h2B) > h1 v h2
  bool meet_strict = false;     ///< dimensions differ on the meet side
  bool join_strict = false;
};

InclusionFlags verify_inclusions(const Subspace& h1a, const Subspace& h2a, const Subspace& h1b,
                                 const Subspace& h2b, const Tolerances& tol = {});

struct RankMonotonicity {
  Index rank_sub = 0;    ///< min_rank upper bound of the smaller subspace
  Index rank_super = 0;  ///< min_rank upper bound of the larger subspace
  bool holds = false;    ///< rank_sub >= rank_super
};

/// Heuristic check of h1 < h2 => rank(h1) >= rank(h2). Throws PreconditionError
/// unless h1 is a subspace of h2.
RankMonotonicity rank_monotonicity_check(const Subspace& h1, const Subspace& h2,
                                         const BipartiteSpace& space, Rng& rng,
                                         const MinRankOptions& options = {},
                                         const Tolerances& tol = {});

}  // namespace qlattice
