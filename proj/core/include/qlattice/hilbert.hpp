#pragma once

// Dense complex linear algebra and the subspace lattice of a finite-dimensional
// Hilbert space: join, meet and orthocomplement over orthonormal bases.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qlattice/rng.hpp"
#include "qlattice/tolerances.hpp"

namespace qlattice {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Unit vector of a finite-dimensional Hilbert space.
class StateVector {
 public:
  /// Throws InvalidInput if the norm differs from 1 by more than `tol.norm`
  /// or an entry is not finite.
  explicit StateVector(ComplexVector amplitudes, const Tolerances& tol = {});

  /// Rescales `v` to unit norm. Throws InvalidInput for a zero vector.
  static StateVector normalized(const ComplexVector& v);

  Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

 private:
  struct Trusted {};
  StateVector(ComplexVector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}

  ComplexVector amplitudes_;
};

class Subspace;

/// Hermitian idempotent matrix. Either derived from a Subspace or validated on
/// construction.
class Projector {
 public:
  /// Validates hermiticity, idempotence and an integral trace against `tol.eq`.
  static Projector from_matrix(ComplexMatrix m, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  double trace() const noexcept { return trace_; }
  /// Trace rounded to the nearest integer, i.e. the dimension of the range.
  Index rank() const noexcept;
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  friend class Subspace;
  Projector(ComplexMatrix m, double trace) : matrix_(std::move(m)), trace_(trace) {}

  ComplexMatrix matrix_;
  double trace_;
};

/// A subspace h of C^n stored as n x k orthonormal columns.
///
/// k = 0 is the zero subspace, k = n the whole space. Equality of subspaces is
/// decided on projectors (see same_subspace), never on bases.
class Subspace {
 public:
  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  /// Trusts that `basis` already has orthonormal columns; checked against `tol.eq`.
  static Subspace from_orthonormal(ComplexMatrix basis, const Tolerances& tol = {});

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index dim() const noexcept { return basis_.cols(); }
  bool is_zero() const noexcept { return basis_.cols() == 0; }
  const ComplexMatrix& basis() const noexcept { return basis_; }

  Projector projector() const;

 private:
  friend Subspace orthonormalize(const ComplexMatrix&, const Tolerances&);
  friend Subspace complement(const Subspace&, const Tolerances&);
  Subspace(Index ambient_dim, ComplexMatrix basis)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

  Index ambient_dim_;
  ComplexMatrix basis_;
};

/// Column space of `m`. Numerical rank: sigma_i > tol.rank * sigma_max.
Subspace orthonormalize(const ComplexMatrix& m, const Tolerances& tol = {});

Projector projector(const Subspace& h);
Subspace complement(const Subspace& h, const Tolerances& tol = {});
Subspace join(const Subspace& h1, const Subspace& h2, const Tolerances& tol = {});
/// Computed as (h1^perp v h2^perp)^perp.
Subspace meet(const Subspace& h1, const Subspace& h2, const Tolerances& tol = {});
bool is_subspace_of(const Subspace& h1, const Subspace& h2, const Tolerances& tol = {});

/// Frobenius distance between the projectors of two subspaces.
double projector_distance(const Subspace& h1, const Subspace& h2);
bool same_subspace(const Subspace& h1, const Subspace& h2, const Tolerances& tol = {});

/// Re <s|op|s>.
double expectation(const StateVector& s, const ComplexMatrix& op);
/// <s|P|s> clamped to [0, 1].
double prob(const StateVector& s, const Projector& p);

/// Full spectrum, ascending. Throws InvalidInput unless ||m - m^dagger||_F <= tol.eq.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const Tolerances& tol = {});

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);
/// Count of singular values above tol.rank * sigma_max; 0 for a zero matrix.
Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

/// Kronecker product; row index of the result is i * b.rows() + k.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

double hermiticity_defect(const ComplexMatrix& m);
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

StateVector random_state(Index dim, Rng& rng);
/// Orthonormalized k-column complex Gaussian matrix.
Subspace random_subspace(Index dim, Index k, Rng& rng, const Tolerances& tol = {});
/// Haar unitary via QR with phase correction.
ComplexMatrix random_unitary(Index dim, Rng& rng);

}  // namespace qlattice
