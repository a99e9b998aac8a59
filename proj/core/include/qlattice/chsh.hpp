#pragma once

// Two-qubit subspace families W, X, Y, Z built from the bases {|0>, |1>} and
// {U|0>, U|1>}, the Boole matrix M, and the logical CHSH sum
//
//   p(1W) + p(4W) + p(1X) + p(4X) + p(1Y) + p(4Y) + p(2Z) + p(3Z) <= 3,
//
// which holds on product states and fails on some rank-two states.
//
// Basis orientation follows the construction this library reproduces:
// |0> = (0, 1)^T and |1> = (1, 0)^T.

#include <array>
#include <optional>
#include <vector>

#include "qlattice/bipartite.hpp"
#include "qlattice/hilbert.hpp"

namespace qlattice {

enum class Setting { W = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Setting, 4> kSettings = {Setting::W, Setting::X, Setting::Y,
                                                     Setting::Z};
char setting_name(Setting s) noexcept;

ComplexVector ket0();
ComplexVector ket1();

/// U = [[a, b], [-b*, a*]] with |a|^2 + |b|^2 = 1 and a, b != 0.
class LocalUnitary {
 public:
  LocalUnitary(Complex a, Complex b, const Tolerances& tol = {});
  /// a = b = 1/sqrt(2).
  static LocalUnitary balanced();

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  ComplexMatrix matrix() const;
  ComplexVector u0() const;  ///< U|0> = (b, a*)
  ComplexVector u1() const;  ///< U|1> = (a, -b*)

 private:
  Complex a_;
  Complex b_;
};

/// 16 one-dimensional atoms h_{iS} (i = 1..4) and the 8 planes h_{14S}, h_{23S}.
class ChshFamily {
 public:
  const LocalUnitary& unitary() const noexcept { return unitary_; }
  /// index in 1..4
  const Subspace& atom(Setting s, int index) const;
  const Subspace& plane14(Setting s) const { return planes14_.at(static_cast<std::size_t>(s)); }
  const Subspace& plane23(Setting s) const { return planes23_.at(static_cast<std::size_t>(s)); }
  /// The product vector spanning atom (s, index).
  const ComplexVector& atom_vector(Setting s, int index) const;

 private:
  friend ChshFamily build_family(const LocalUnitary&, const Tolerances&);
  explicit ChshFamily(const LocalUnitary& u) : unitary_(u) {}

  LocalUnitary unitary_;
  // Indexed by 4 * setting + (index - 1).
  std::vector<ComplexVector> vectors_;
  std::vector<Subspace> atoms_;
  std::vector<Subspace> planes14_;
  std::vector<Subspace> planes23_;
};

/// Builds and audits the family; throws PreconditionError if an invariant fails.
ChshFamily build_family(const LocalUnitary& u, const Tolerances& tol = {});

struct Lemma1Dims {
  Index meet_dim = 0;  ///< dim(h14W ^ h14X ^ h14Y ^ h23Z)
  Index join_dim = 0;  ///< dim(h23W v h23X v h23Y v h14Z)
};

Lemma1Dims lemma1_check(const ChshFamily& f, const Tolerances& tol = {});

/// p_A = |<s_A|1>|^2, p_B = |<s_B|1>|^2, p'_A = |<s_A|U|1>|^2, p'_B = |<s_B|U|1>|^2.
struct LocalProbabilities {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_a_prime = 0.0;
  double p_b_prime = 0.0;
};

LocalProbabilities local_probabilities(const StateVector& s_a, const StateVector& s_b,
                                       const LocalUnitary& u);

struct OmegaResult {
  LocalProbabilities probs;
  double omega = 0.0;
};

/// Omega = p_A + p_B + p'_A p'_B - p_A p_B - p'_A p_B - p_A p'_B.
OmegaResult omega(const StateVector& s_a, const StateVector& s_b, const LocalUnitary& u);

/// Omega' = p[Pi(h23W)] + p[Pi(h23X)] - 1 on the product state s_A (x) s_B.
double omega_prime(const StateVector& s_a, const StateVector& s_b, const ChshFamily& f);
/// (2 p_A - 1)(1 - p_B - p'_B).
double omega_prime_closed_form(const LocalProbabilities& p);

/// M = Pi(h23W) + Pi(h23X) + Pi(h23Y) + Pi(h14Z) - 1.
ComplexMatrix boole_matrix(const ChshFamily& f);
ComplexMatrix boole_matrix(const LocalUnitary& u, const Tolerances& tol = {});

struct ChshReport {
  double omega = 0.0;        ///< (boole_sum - 1) / 2; equals Omega on product states
  double omega_prime = 0.0;  ///< p(h23W) + p(h23X) - 1
  double chsh_sum = 0.0;     ///< sum of the eight atom probabilities
  double boole_sum = 0.0;    ///< p(h23W) + p(h23X) + p(h23Y) + p(h14Z)
  bool violated = false;     ///< chsh_sum > 3 + tol.ineq
};

ChshReport chsh_sum(const BipartiteState& s, const ChshFamily& f, const Tolerances& tol = {});

struct Violation {
  BipartiteState state;
  double lambda_min = 0.0;
  double chsh_sum = 0.0;
  Index schmidt_rank = 0;
};

/// Eigenvector of M with the most negative eigenvalue, if that eigenvalue is below -tol.ineq.
std::optional<Violation> find_violation(const LocalUnitary& u, const Tolerances& tol = {});

}  // namespace qlattice
