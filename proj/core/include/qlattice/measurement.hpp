#pragma once

// Product projective measurements on H_A (x) H_B and the rank reduction they
// cause. Collapse acts on the coefficient matrix as
//   M -> pi_A M pi_B^T,
// so Sylvester and Frobenius rank inequalities bound the post-measurement rank.

#include <optional>
#include <vector>

#include "qlattice/bipartite.hpp"
#include "qlattice/hilbert.hpp"

namespace qlattice {

/// Complete family of pairwise orthogonal projectors on one party.
class OrthogonalDecomposition {
 public:
  static OrthogonalDecomposition from_projectors(std::vector<Projector> projectors,
                                                 const Tolerances& tol = {});
  /// Coordinate projectors; each inner list is a set of basis indices.
  static OrthogonalDecomposition from_index_sets(Index dim,
                                                 const std::vector<std::vector<Index>>& supports,
                                                 const Tolerances& tol = {});
  /// The single outcome {1}.
  static OrthogonalDecomposition trivial(Index dim);

  Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const Projector& operator[](std::size_t i) const { return projectors_.at(i); }
  const std::vector<Projector>& projectors() const noexcept { return projectors_; }

 private:
  OrthogonalDecomposition(Index dim, std::vector<Projector> p)
      : dim_(dim), projectors_(std::move(p)) {}

  Index dim_;
  std::vector<Projector> projectors_;
};

/// sum_ab m_ab Pi_Aa (x) Pi_Bb. Outcome labels never affect ranks.
class ProductMeasurement {
 public:
  /// Labels default to a * size_B + b when `labels` is empty.
  ProductMeasurement(OrthogonalDecomposition a, OrthogonalDecomposition b,
                     Eigen::MatrixXd labels = {});

  const OrthogonalDecomposition& side_a() const noexcept { return a_; }
  const OrthogonalDecomposition& side_b() const noexcept { return b_; }
  const Eigen::MatrixXd& labels() const noexcept { return labels_; }

 private:
  OrthogonalDecomposition a_;
  OrthogonalDecomposition b_;
  Eigen::MatrixXd labels_;
};

struct CollapseResult {
  double probability = 0.0;
  std::optional<BipartiteState> state;  ///< absent when probability <= tol.prob
};

/// pi_A M pi_B^T, unnormalized.
ComplexMatrix apply_local_projectors(const ComplexMatrix& coeff, const Projector& p_a,
                                     const Projector& p_b);
/// (Pi_A (x) Pi_B)|s>, unnormalized. Independent of the coefficient-matrix path.
ComplexVector apply_product_projector(const ComplexVector& amplitudes, const Projector& p_a,
                                      const Projector& p_b);

CollapseResult collapse(const BipartiteState& s, const Projector& p_a, const Projector& p_b,
                        const Tolerances& tol = {});

struct SylvesterWindow {
  long lo = 0;  ///< rank(s) - (d_A - Tr Pi_A) - (d_B - Tr Pi_B); may be <= 0
  long hi = 0;  ///< min(rank(s), Tr Pi_A, Tr Pi_B)
  bool contains(long r) const noexcept { return lo <= r && r <= hi; }
};

/// Throws UndefinedRank when the outcome has probability <= tol.prob.
SylvesterWindow sylvester_bounds(const BipartiteState& s, const Projector& p_a,
                                 const Projector& p_b, const Tolerances& tol = {});

/// Rank reductions of the collapses by Pi_A (x) 1, 1 (x) Pi_B and Pi_A (x) Pi_B.
/// Entries are absent for zero-probability branches.
struct RankReductions {
  std::optional<Index> r_a;
  std::optional<Index> r_b;
  std::optional<Index> r_ab;
};

RankReductions rank_reductions(const BipartiteState& s, const Projector& p_a,
                               const Projector& p_b, const Tolerances& tol = {});

struct OutcomeRecord {
  std::size_t a = 0;
  std::size_t b = 0;
  double label = 0.0;
  double probability = 0.0;
  std::optional<BipartiteState> collapsed;
  Index rank_before = 0;
  std::optional<Index> rank_after;
  std::optional<Index> reduction;
};

struct RankReductionReport {
  std::vector<OutcomeRecord> outcomes;  ///< lexicographic in (a, b)
  double r_ave = 0.0;
  double upper_bound = 0.0;
  std::vector<double> marginals_a;
  std::vector<double> marginals_b;
  double total_probability = 0.0;
};

/// Zero-probability branches have no reduction and contribute 0 to r_ave.
RankReductionReport measure_all(const BipartiteState& s, const ProductMeasurement& m,
                                const Tolerances& tol = {});

}  // namespace qlattice
