#include "qlattice/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qlattice/errors.hpp"

namespace qlattice {

BipartiteSpace::BipartiteSpace(Index d_a, Index d_b) : d_a_(d_a), d_b_(d_b) {
  if (d_a < 2 || d_b < 2) {
    throw InvalidInput("bipartite factors need dimension >= 2 (got " + std::to_string(d_a) + ", " +
                       std::to_string(d_b) + ")");
  }
}

ComplexMatrix coefficient_matrix(const ComplexVector& amplitudes, const BipartiteSpace& space) {
  if (amplitudes.size() != space.dim()) {
    throw DimensionMismatch("coefficient_matrix: vector length " +
                            std::to_string(amplitudes.size()) + " is not d_A*d_B = " +
                            std::to_string(space.dim()));
  }
  ComplexMatrix m(space.d_a(), space.d_b());
  for (Index i = 0; i < space.d_a(); ++i) {
    for (Index j = 0; j < space.d_b(); ++j) m(i, j) = amplitudes(i * space.d_b() + j);
  }
  return m;
}

ComplexVector flatten_coefficients(const ComplexMatrix& coeff) {
  ComplexVector v(coeff.size());
  for (Index i = 0; i < coeff.rows(); ++i) {
    for (Index j = 0; j < coeff.cols(); ++j) v(i * coeff.cols() + j) = coeff(i, j);
  }
  return v;
}

BipartiteState::BipartiteState(const BipartiteSpace& space, const StateVector& state)
    : space_(space), state_(state), coeff_(coefficient_matrix(state.amplitudes(), space)) {}

BipartiteState BipartiteState::from_coefficients(const BipartiteSpace& space,
                                                 const ComplexMatrix& coeff,
                                                 const Tolerances& tol) {
  if (coeff.rows() != space.d_a() || coeff.cols() != space.d_b()) {
    throw DimensionMismatch("from_coefficients: matrix shape does not match the space");
  }
  return BipartiteState(space, StateVector(flatten_coefficients(coeff), tol));
}

BipartiteState BipartiteState::normalized_from_coefficients(const BipartiteSpace& space,
                                                            const ComplexMatrix& coeff) {
  if (coeff.rows() != space.d_a() || coeff.cols() != space.d_b()) {
    throw DimensionMismatch("normalized_from_coefficients: matrix shape does not match the space");
  }
  return BipartiteState(space, StateVector::normalized(flatten_coefficients(coeff)));
}

BipartiteState BipartiteState::product(const StateVector& a, const StateVector& b) {
  const BipartiteSpace space(a.dim(), b.dim());
  return BipartiteState(space, StateVector::normalized(kron(a.amplitudes(), b.amplitudes())));
}

SchmidtData schmidt_rank(const BipartiteState& s, const Tolerances& tol) {
  SchmidtData out;
  out.singular_values = singular_values(s.coefficients());
  if (!out.singular_values.empty() && out.singular_values.front() > 0.0) {
    const double cutoff = tol.rank * out.singular_values.front();
    out.rank = static_cast<Index>(std::count_if(out.singular_values.begin(),
                                                out.singular_values.end(),
                                                [&](double x) { return x > cutoff; }));
  }
  return out;
}

Subspace tensor_subspace(const Subspace& ha, const Subspace& hb, const Tolerances& tol) {
  return Subspace::from_orthonormal(kron(ha.basis(), hb.basis()), tol);
}

// ---------------------------------------------------------------------------
// min_rank

namespace {

struct LocalSearchResult {
  ComplexVector c;
  ComplexMatrix m;
  bool feasible = false;
};

ComplexMatrix combine(const std::vector<ComplexMatrix>& v, const ComplexVector& c) {
  ComplexMatrix m = ComplexMatrix::Zero(v.front().rows(), v.front().cols());
  for (std::size_t j = 0; j < v.size(); ++j) m += c(static_cast<Index>(j)) * v[j];
  return m;
}

ComplexVector random_unit(Index k, Rng& rng) {
  ComplexVector c(k);
  for (Index j = 0; j < k; ++j) c(j) = rng.complex_normal();
  return c / c.norm();
}

bool rank_at_most(const Eigen::VectorXd& sigma, Index r, double rel_tol) {
  if (r >= sigma.size()) return true;
  return sigma(r) <= rel_tol * sigma(0);
}

// Alternating minimization of the tail sum_{i>=r} sigma_i(M(c))^2.
LocalSearchResult local_search(const std::vector<ComplexMatrix>& v, Index r, ComplexVector c,
                               int max_iterations, const Tolerances& tol) {
  const Index k = static_cast<Index>(v.size());
  const Index rows = v.front().rows();
  double previous = std::numeric_limits<double>::infinity();

  for (int it = 0; it <= max_iterations; ++it) {
    const ComplexMatrix m = combine(v, c);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (rank_at_most(sigma, r, tol.rank)) return {c, m, true};

    const double tail = sigma.tail(sigma.size() - r).squaredNorm();
    if (std::isfinite(previous) && previous - tail <= 1e-12 * previous) break;  // stalled
    previous = tail;

    const ComplexMatrix q = svd.matrixU().leftCols(r);
    const ComplexMatrix perp = ComplexMatrix::Identity(rows, rows) - q * q.adjoint();
    std::vector<ComplexMatrix> w;
    w.reserve(v.size());
    for (const auto& vj : v) w.push_back(perp * vj);

    ComplexMatrix gram(k, k);
    for (Index a = 0; a < k; ++a) {
      for (Index b = a; b < k; ++b) {
        const Complex g = (w[a].adjoint() * w[b]).trace();
        gram(a, b) = g;
        gram(b, a) = std::conj(g);
      }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
    c = es.eigenvectors().col(0);
  }
  const ComplexMatrix m = combine(v, c);
  return {c, m, numerical_rank(m, tol) <= r};
}

}  // namespace

MinRankResult min_rank(const Subspace& h, const BipartiteSpace& space, Rng& rng,
                       const MinRankOptions& options, const Tolerances& tol) {
  if (h.ambient_dim() != space.dim()) {
    throw DimensionMismatch("min_rank: subspace is not in the declared product space");
  }
  MinRankResult result;
  const Index k = h.dim();
  if (k == 0) {
    result.converged = true;
    return result;
  }

  std::vector<ComplexMatrix> v;
  v.reserve(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) v.push_back(coefficient_matrix(h.basis().col(j), space));

  const std::uint64_t base_seed = rng.next_u64();
  Rng generic_rng(derive_seed(base_seed, 0));
  const ComplexMatrix generic = combine(v, random_unit(k, generic_rng));
  result.generic_rank = numerical_rank(generic, tol);
  result.upper_bound = result.generic_rank;
  result.witness = BipartiteState::normalized_from_coefficients(space, generic);

  if (k == 1 || result.generic_rank <= 1) {
    result.converged = true;
    return result;
  }

  result.converged = options.restarts > 0;
  for (Index r = 1; r < result.generic_rank; ++r) {
    for (int t = 0; t < options.restarts; ++t) {
      const auto stream = static_cast<std::uint64_t>(r) * 1'000'003ULL + static_cast<std::uint64_t>(t) + 1;
      Rng local(derive_seed(base_seed, stream));
      ++result.restarts_used;
      const LocalSearchResult found =
          local_search(v, r, random_unit(k, local), options.max_iterations, tol);
      if (found.feasible) {
        result.witness = BipartiteState::normalized_from_coefficients(space, found.m);
        result.upper_bound = schmidt_rank(*result.witness, tol).rank;
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Product lattice identities

double ProductLatticeResiduals::max() const noexcept {
  return *std::max_element(residuals.begin(), residuals.end());
}

namespace {

void require_local_dims(const Subspace& h1, const Subspace& h2, const char* side) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw DimensionMismatch(std::string("subspaces of party ") + side +
                            " live in different dimensions");
  }
}

}  // namespace

ProductLatticeResiduals verify_product_lattice(const Subspace& h1a, const Subspace& h2a,
                                               const Subspace& h1b, const Subspace& h2b,
                                               const Tolerances& tol) {
  require_local_dims(h1a, h2a, "A");
  require_local_dims(h1b, h2b, "B");
  const Subspace h1 = tensor_subspace(h1a, h1b, tol);
  const Subspace g12 = tensor_subspace(h1a, h2b, tol);
  const Subspace g21 = tensor_subspace(h2a, h1b, tol);
  const Subspace h2 = tensor_subspace(h2a, h2b, tol);

  const Subspace meet_a = meet(h1a, h2a, tol);
  const Subspace meet_b = meet(h1b, h2b, tol);
  const Subspace join_a = join(h1a, h2a, tol);
  const Subspace join_b = join(h1b, h2b, tol);

  ProductLatticeResiduals r;
  r.residuals[0] = projector_distance(tensor_subspace(h1a, meet_b, tol), meet(h1, g12, tol));
  r.residuals[1] = projector_distance(tensor_subspace(meet_a, h1b, tol), meet(h1, g21, tol));
  r.residuals[2] = projector_distance(tensor_subspace(meet_a, meet_b, tol),
                                      meet(meet(meet(h1, g12, tol), g21, tol), h2, tol));
  r.residuals[3] = projector_distance(tensor_subspace(h1a, join_b, tol), join(h1, g12, tol));
  r.residuals[4] = projector_distance(tensor_subspace(join_a, h1b, tol), join(h1, g21, tol));
  r.residuals[5] = projector_distance(tensor_subspace(join_a, join_b, tol),
                                      join(join(join(h1, g12, tol), g21, tol), h2, tol));
  return r;
}

InclusionFlags verify_inclusions(const Subspace& h1a, const Subspace& h2a, const Subspace& h1b,
                                 const Subspace& h2b, const Tolerances& tol) {
  require_local_dims(h1a, h2a, "A");
  require_local_dims(h1b, h2b, "B");
  const Subspace h1 = tensor_subspace(h1a, h1b, tol);
  const Subspace h2 = tensor_subspace(h2a, h2b, tol);

  const Subspace small = tensor_subspace(meet(h1a, h2a, tol), meet(h1b, h2b, tol), tol);
  const Subspace h_meet = meet(h1, h2, tol);
  const Subspace big = tensor_subspace(join(h1a, h2a, tol), join(h1b, h2b, tol), tol);
  const Subspace h_join = join(h1, h2, tol);

  InclusionFlags f;
  f.meet_inclusion = is_subspace_of(small, h_meet, tol);
  f.join_inclusion = is_subspace_of(h_join, big, tol);
  f.meet_strict = small.dim() != h_meet.dim();
  f.join_strict = big.dim() != h_join.dim();
  return f;
}

RankMonotonicity rank_monotonicity_check(const Subspace& h1, const Subspace& h2,
                                         const BipartiteSpace& space, Rng& rng,
                                         const MinRankOptions& options, const Tolerances& tol) {
  if (!is_subspace_of(h1, h2, tol)) {
    throw PreconditionError("rank_monotonicity_check: h1 must be a subspace of h2");
  }
  RankMonotonicity out;
  out.rank_sub = min_rank(h1, space, rng, options, tol).upper_bound;
  out.rank_super = min_rank(h2, space, rng, options, tol).upper_bound;
  out.holds = out.rank_sub >= out.rank_super;
  return out;
}

}  // namespace qlattice
