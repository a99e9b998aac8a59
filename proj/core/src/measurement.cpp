#include "qlattice/measurement.hpp"

#include <algorithm>
#include <string>

#include "qlattice/errors.hpp"

namespace qlattice {

OrthogonalDecomposition OrthogonalDecomposition::from_projectors(std::vector<Projector> projectors,
                                                                 const Tolerances& tol) {
  if (projectors.empty()) throw InvalidInput("decomposition needs at least one projector");
  const Index n = projectors.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].dim() != n) throw DimensionMismatch("decomposition projectors differ in size");
    sum += projectors[i].matrix();
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((projectors[i].matrix() * projectors[j].matrix()).norm() > tol.eq) {
        throw InvalidInput("decomposition projectors " + std::to_string(i) + " and " +
                           std::to_string(j) + " are not orthogonal");
      }
    }
  }
  if ((sum - ComplexMatrix::Identity(n, n)).norm() > tol.eq) {
    throw InvalidInput("decomposition projectors do not sum to the identity");
  }
  return OrthogonalDecomposition(n, std::move(projectors));
}

OrthogonalDecomposition OrthogonalDecomposition::from_index_sets(
    Index dim, const std::vector<std::vector<Index>>& supports, const Tolerances& tol) {
  std::vector<Projector> ps;
  ps.reserve(supports.size());
  for (const auto& support : supports) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Index i : support) {
      if (i < 0 || i >= dim) throw InvalidInput("support index out of range");
      if (m(i, i) != Complex(0.0)) throw InvalidInput("support lists an index twice");
      m(i, i) = 1.0;
    }
    ps.push_back(Projector::from_matrix(std::move(m), tol));
  }
  return from_projectors(std::move(ps), tol);
}

OrthogonalDecomposition OrthogonalDecomposition::trivial(Index dim) {
  return from_projectors({Subspace::full(dim).projector()});
}

ProductMeasurement::ProductMeasurement(OrthogonalDecomposition a, OrthogonalDecomposition b,
                                       Eigen::MatrixXd labels)
    : a_(std::move(a)), b_(std::move(b)), labels_(std::move(labels)) {
  const auto na = static_cast<Index>(a_.size());
  const auto nb = static_cast<Index>(b_.size());
  if (labels_.size() == 0) {
    labels_.resize(na, nb);
    for (Index i = 0; i < na; ++i) {
      for (Index j = 0; j < nb; ++j) labels_(i, j) = static_cast<double>(i * nb + j);
    }
  }
  if (labels_.rows() != na || labels_.cols() != nb) {
    throw InvalidInput("outcome label grid does not match the decomposition sizes");
  }
}

// ---------------------------------------------------------------------------

namespace {

void require_compatible(const BipartiteState& s, const Projector& p_a, const Projector& p_b) {
  if (p_a.dim() != s.space().d_a() || p_b.dim() != s.space().d_b()) {
    throw DimensionMismatch("local projectors do not match the bipartite space (" +
                            std::to_string(p_a.dim()) + "x" + std::to_string(p_b.dim()) +
                            " vs " + std::to_string(s.space().d_a()) + "x" +
                            std::to_string(s.space().d_b()) + ")");
  }
}

Index schmidt_rank_of(const ComplexMatrix& coeff, const Tolerances& tol) {
  return numerical_rank(coeff, tol);
}

}  // namespace

ComplexMatrix apply_local_projectors(const ComplexMatrix& coeff, const Projector& p_a,
                                     const Projector& p_b) {
  return p_a.matrix() * coeff * p_b.matrix().transpose();
}

ComplexVector apply_product_projector(const ComplexVector& amplitudes, const Projector& p_a,
                                      const Projector& p_b) {
  return kron(p_a.matrix(), p_b.matrix()) * amplitudes;
}

CollapseResult collapse(const BipartiteState& s, const Projector& p_a, const Projector& p_b,
                        const Tolerances& tol) {
  require_compatible(s, p_a, p_b);
  const ComplexMatrix projected = apply_local_projectors(s.coefficients(), p_a, p_b);
  // <s|Pi|s> = ||Pi s||^2 for a projector.
  CollapseResult r;
  r.probability = std::clamp(projected.squaredNorm(), 0.0, 1.0);
  if (r.probability > tol.prob) {
    r.state = BipartiteState::normalized_from_coefficients(s.space(), projected);
  }
  return r;
}

SylvesterWindow sylvester_bounds(const BipartiteState& s, const Projector& p_a,
                                 const Projector& p_b, const Tolerances& tol) {
  require_compatible(s, p_a, p_b);
  const ComplexMatrix projected = apply_local_projectors(s.coefficients(), p_a, p_b);
  if (projected.squaredNorm() <= tol.prob) {
    throw UndefinedRank("sylvester_bounds: outcome has zero probability");
  }
  const long rank = static_cast<long>(schmidt_rank_of(s.coefficients(), tol));
  const long tr_a = static_cast<long>(p_a.rank());
  const long tr_b = static_cast<long>(p_b.rank());
  const long d_a = static_cast<long>(s.space().d_a());
  const long d_b = static_cast<long>(s.space().d_b());
  return {rank - (d_a - tr_a) - (d_b - tr_b), std::min({rank, tr_a, tr_b})};
}

RankReductions rank_reductions(const BipartiteState& s, const Projector& p_a,
                               const Projector& p_b, const Tolerances& tol) {
  require_compatible(s, p_a, p_b);
  const Index before = schmidt_rank_of(s.coefficients(), tol);
  const Projector id_a = Subspace::full(s.space().d_a()).projector();
  const Projector id_b = Subspace::full(s.space().d_b()).projector();

  auto reduction = [&](const Projector& pa, const Projector& pb) -> std::optional<Index> {
    const ComplexMatrix projected = apply_local_projectors(s.coefficients(), pa, pb);
    if (projected.squaredNorm() <= tol.prob) return std::nullopt;
    return before - schmidt_rank_of(projected, tol);
  };
  return {reduction(p_a, id_b), reduction(id_a, p_b), reduction(p_a, p_b)};
}

RankReductionReport measure_all(const BipartiteState& s, const ProductMeasurement& m,
                                const Tolerances& tol) {
  const auto& side_a = m.side_a();
  const auto& side_b = m.side_b();
  if (side_a.dim() != s.space().d_a() || side_b.dim() != s.space().d_b()) {
    throw DimensionMismatch("measure_all: measurement does not match the state's space");
  }
  const Index before = schmidt_rank_of(s.coefficients(), tol);
  const double d_sum = static_cast<double>(s.space().d_a() + s.space().d_b());

  RankReductionReport report;
  report.marginals_a.assign(side_a.size(), 0.0);
  report.marginals_b.assign(side_b.size(), 0.0);
  double trace_weight = 0.0;

  for (std::size_t a = 0; a < side_a.size(); ++a) {
    for (std::size_t b = 0; b < side_b.size(); ++b) {
      OutcomeRecord rec;
      rec.a = a;
      rec.b = b;
      rec.label = m.labels()(static_cast<Index>(a), static_cast<Index>(b));
      rec.rank_before = before;

      CollapseResult c = collapse(s, side_a[a], side_b[b], tol);
      rec.probability = c.probability;
      if (c.state) {
        rec.rank_after = schmidt_rank(*c.state, tol).rank;
        rec.reduction = before - *rec.rank_after;
        report.r_ave += rec.probability * static_cast<double>(*rec.reduction);
      }
      rec.collapsed = std::move(c.state);

      report.marginals_a[a] += rec.probability;
      report.marginals_b[b] += rec.probability;
      report.total_probability += rec.probability;
      trace_weight += rec.probability * (side_a[a].trace() + side_b[b].trace());
      report.outcomes.push_back(std::move(rec));
    }
  }
  report.upper_bound = d_sum - trace_weight;
  return report;
}

}  // namespace qlattice
