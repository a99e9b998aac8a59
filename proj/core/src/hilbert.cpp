#include "qlattice/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qlattice/errors.hpp"

namespace qlattice {

namespace {

void require_same_dim(const Subspace& h1, const Subspace& h2, const char* op) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch(std::string(op) + ": subspaces live in dimensions " +
                            std::to_string(h1.ambient_dim()) + " and " +
                            std::to_string(h2.ambient_dim()));
  }
}

}  // namespace

void Tolerances::validate() const {
  for (double v : {rank, eq, norm, prob, ineq}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidInput("tolerances must be finite and strictly positive");
    }
  }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(ComplexVector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  if (!amplitudes_.allFinite()) throw InvalidInput("state has non-finite amplitudes");
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol.norm) {
    throw InvalidInput("state is not normalized (norm " + std::to_string(n) + ")");
  }
}

StateVector StateVector::normalized(const ComplexVector& v) {
  if (!v.allFinite()) throw InvalidInput("state has non-finite amplitudes");
  const double n = v.norm();
  if (n == 0.0) throw InvalidInput("cannot normalize the zero vector");
  return StateVector(v / n, Trusted{});
}

// ---------------------------------------------------------------------------
// Projector

Projector Projector::from_matrix(ComplexMatrix m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw InvalidInput("projector matrix must be square");
  if (!m.allFinite()) throw InvalidInput("projector matrix has non-finite entries");
  if (hermiticity_defect(m) > tol.eq) throw InvalidInput("projector matrix is not Hermitian");
  if ((m * m - m).norm() > tol.eq) throw InvalidInput("projector matrix is not idempotent");
  const double tr = m.trace().real();
  if (std::abs(tr - std::round(tr)) > tol.eq * std::max<Index>(1, m.rows())) {
    throw InvalidInput("projector trace is not an integer");
  }
  return Projector(std::move(m), tr);
}

Index Projector::rank() const noexcept { return static_cast<Index>(std::lround(trace_)); }

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(Index ambient_dim) {
  return Subspace(ambient_dim, ComplexMatrix(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(ambient_dim, ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::from_orthonormal(ComplexMatrix basis, const Tolerances& tol) {
  if (!basis.allFinite()) throw InvalidInput("basis has non-finite entries");
  const Index k = basis.cols();
  if (k > basis.rows()) throw InvalidInput("more basis columns than the ambient dimension");
  const ComplexMatrix gram = basis.adjoint() * basis;
  if ((gram - ComplexMatrix::Identity(k, k)).norm() > tol.eq) {
    throw InvalidInput("basis columns are not orthonormal");
  }
  const Index n = basis.rows();
  return Subspace(n, std::move(basis));
}

Projector Subspace::projector() const {
  ComplexMatrix p = basis_ * basis_.adjoint();
  return Projector(std::move(p), static_cast<double>(basis_.cols()));
}

Projector projector(const Subspace& h) { return h.projector(); }

Subspace orthonormalize(const ComplexMatrix& m, const Tolerances& tol) {
  if (!m.allFinite()) throw InvalidInput("orthonormalize: non-finite entries");
  const Index n = m.rows();
  if (m.cols() == 0 || n == 0) return Subspace::zero(n);

  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  Index r = 0;
  if (smax > 0.0) {
    while (r < sigma.size() && sigma(r) > tol.rank * smax) ++r;
  }
  return Subspace(n, svd.matrixU().leftCols(r));
}

Subspace complement(const Subspace& h, const Tolerances& /*tol*/) {
  const Index n = h.ambient_dim();
  const Index k = h.dim();
  if (k == 0) return Subspace::full(n);
  if (k == n) return Subspace::zero(n);
  Eigen::JacobiSVD<ComplexMatrix> svd(h.basis(), Eigen::ComputeFullU);
  return Subspace(n, svd.matrixU().rightCols(n - k));
}

Subspace join(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  require_same_dim(h1, h2, "join");
  if (h1.is_zero()) return h2;
  if (h2.is_zero()) return h1;
  ComplexMatrix stacked(h1.ambient_dim(), h1.dim() + h2.dim());
  stacked << h1.basis(), h2.basis();
  return orthonormalize(stacked, tol);
}

Subspace meet(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  require_same_dim(h1, h2, "meet");
  return complement(join(complement(h1, tol), complement(h2, tol), tol), tol);
}

bool is_subspace_of(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  require_same_dim(h1, h2, "is_subspace_of");
  if (h1.is_zero()) return true;
  // Pi(h2) Pi(h1) - Pi(h1) = (Pi(h2) B1 - B1) B1^dagger, same Frobenius norm as Pi(h2) B1 - B1.
  const ComplexMatrix residual = h2.basis() * (h2.basis().adjoint() * h1.basis()) - h1.basis();
  return residual.norm() <= tol.eq;
}

double projector_distance(const Subspace& h1, const Subspace& h2) {
  require_same_dim(h1, h2, "projector_distance");
  return (h1.projector().matrix() - h2.projector().matrix()).norm();
}

bool same_subspace(const Subspace& h1, const Subspace& h2, const Tolerances& tol) {
  return projector_distance(h1, h2) <= tol.eq;
}

double expectation(const StateVector& s, const ComplexMatrix& op) {
  if (op.rows() != s.dim() || op.cols() != s.dim()) {
    throw DimensionMismatch("expectation: operator and state dimensions differ");
  }
  return s.amplitudes().dot(op * s.amplitudes()).real();
}

double prob(const StateVector& s, const Projector& p) {
  return std::clamp(expectation(s, p.matrix()), 0.0, 1.0);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw InvalidInput("hermitian_eigenvalues: matrix is not square");
  if (!m.allFinite()) throw InvalidInput("hermitian_eigenvalues: non-finite entries");
  if (hermiticity_defect(m) > tol.eq) {
    throw InvalidInput("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cutoff = tol.rank * s.front();
  return static_cast<Index>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cutoff; }));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).norm(); }

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b - b * a).norm();
}

StateVector random_state(Index dim, Rng& rng) {
  if (dim < 1) throw InvalidInput("random_state: dimension must be positive");
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return StateVector::normalized(v);
}

Subspace random_subspace(Index dim, Index k, Rng& rng, const Tolerances& tol) {
  if (k < 0 || k > dim) {
    throw InvalidInput("random_subspace: need 0 <= k <= dim (k=" + std::to_string(k) +
                       ", dim=" + std::to_string(dim) + ")");
  }
  ComplexMatrix g(dim, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  }
  return orthonormalize(g, tol);
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace qlattice
