#include "qlattice/chsh.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qlattice/errors.hpp"

namespace qlattice {

char setting_name(Setting s) noexcept {
  switch (s) {
    case Setting::W: return 'W';
    case Setting::X: return 'X';
    case Setting::Y: return 'Y';
    case Setting::Z: return 'Z';
  }
  return '?';
}

ComplexVector ket0() { return ComplexVector{{Complex(0.0), Complex(1.0)}}; }
ComplexVector ket1() { return ComplexVector{{Complex(1.0), Complex(0.0)}}; }

LocalUnitary::LocalUnitary(Complex a, Complex b, const Tolerances& tol) : a_(a), b_(b) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
      !std::isfinite(b.imag())) {
    throw InvalidInput("LocalUnitary: non-finite parameters");
  }
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol.norm) {
    throw InvalidInput("LocalUnitary: |a|^2 + |b|^2 must equal 1");
  }
  if (std::abs(a) <= tol.norm || std::abs(b) <= tol.norm) {
    throw InvalidInput("LocalUnitary: a and b must both be nonzero");
  }
}

LocalUnitary LocalUnitary::balanced() {
  const double h = 1.0 / std::sqrt(2.0);
  return LocalUnitary(h, h);
}

ComplexMatrix LocalUnitary::matrix() const {
  ComplexMatrix u(2, 2);
  u << a_, b_, -std::conj(b_), std::conj(a_);
  return u;
}

ComplexVector LocalUnitary::u0() const { return matrix() * ket0(); }
ComplexVector LocalUnitary::u1() const { return matrix() * ket1(); }

// ---------------------------------------------------------------------------

namespace {

std::size_t slot(Setting s, int index) {
  if (index < 1 || index > 4) throw InvalidInput("atom index must be in 1..4");
  return 4 * static_cast<std::size_t>(s) + static_cast<std::size_t>(index - 1);
}

}  // namespace

const Subspace& ChshFamily::atom(Setting s, int index) const { return atoms_.at(slot(s, index)); }

const ComplexVector& ChshFamily::atom_vector(Setting s, int index) const {
  return vectors_.at(slot(s, index));
}

ChshFamily build_family(const LocalUnitary& u, const Tolerances& tol) {
  ChshFamily f(u);
  const ComplexVector plain0 = ket0();
  const ComplexVector plain1 = ket1();
  const ComplexVector rot0 = u.u0();
  const ComplexVector rot1 = u.u1();

  for (Setting s : kSettings) {
    // A side rotated for Y and Z, B side rotated for X and Z.
    const bool rot_a = s == Setting::Y || s == Setting::Z;
    const bool rot_b = s == Setting::X || s == Setting::Z;
    const ComplexVector& a0 = rot_a ? rot0 : plain0;
    const ComplexVector& a1 = rot_a ? rot1 : plain1;
    const ComplexVector& b0 = rot_b ? rot0 : plain0;
    const ComplexVector& b1 = rot_b ? rot1 : plain1;
    f.vectors_.push_back(kron(a1, b1));  // 1
    f.vectors_.push_back(kron(a1, b0));  // 2
    f.vectors_.push_back(kron(a0, b1));  // 3
    f.vectors_.push_back(kron(a0, b0));  // 4
  }
  for (const auto& v : f.vectors_) f.atoms_.push_back(orthonormalize(v, tol));
  for (Setting s : kSettings) {
    f.planes14_.push_back(join(f.atom(s, 1), f.atom(s, 4), tol));
    f.planes23_.push_back(join(f.atom(s, 2), f.atom(s, 3), tol));
  }

  const ComplexMatrix identity = ComplexMatrix::Identity(4, 4);
  for (Setting s : kSettings) {
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) {
        if (std::abs(f.atom_vector(s, i).dot(f.atom_vector(s, j))) > tol.eq) {
          throw PreconditionError(std::string("build_family: atoms of set ") + setting_name(s) +
                                  " are not orthogonal");
        }
      }
    }
    const Subspace& p14 = f.plane14(s);
    const Subspace& p23 = f.plane23(s);
    if (p14.dim() != 2 || p23.dim() != 2 ||
        (p14.projector().matrix() + p23.projector().matrix() - identity).norm() > tol.eq) {
      throw PreconditionError(std::string("build_family: planes of set ") + setting_name(s) +
                              " are not orthocomplements");
    }
  }
  return f;
}

Lemma1Dims lemma1_check(const ChshFamily& f, const Tolerances& tol) {
  Subspace m = meet(f.plane14(Setting::W), f.plane14(Setting::X), tol);
  m = meet(m, f.plane14(Setting::Y), tol);
  m = meet(m, f.plane23(Setting::Z), tol);

  Subspace j = join(f.plane23(Setting::W), f.plane23(Setting::X), tol);
  j = join(j, f.plane23(Setting::Y), tol);
  j = join(j, f.plane14(Setting::Z), tol);
  return {m.dim(), j.dim()};
}

// ---------------------------------------------------------------------------

namespace {

void require_qubit(const StateVector& s, const char* who) {
  if (s.dim() != 2) throw DimensionMismatch(std::string(who) + ": local states must be qubits");
}

double overlap_sq(const StateVector& s, const ComplexVector& v) {
  return std::norm(s.amplitudes().dot(v));
}

}  // namespace

LocalProbabilities local_probabilities(const StateVector& s_a, const StateVector& s_b,
                                       const LocalUnitary& u) {
  require_qubit(s_a, "local_probabilities");
  require_qubit(s_b, "local_probabilities");
  const ComplexVector one = ket1();
  const ComplexVector rot1 = u.u1();
  return {overlap_sq(s_a, one), overlap_sq(s_b, one), overlap_sq(s_a, rot1),
          overlap_sq(s_b, rot1)};
}

OmegaResult omega(const StateVector& s_a, const StateVector& s_b, const LocalUnitary& u) {
  const LocalProbabilities p = local_probabilities(s_a, s_b, u);
  const double w = p.p_a + p.p_b + p.p_a_prime * p.p_b_prime - p.p_a * p.p_b -
                   p.p_a_prime * p.p_b - p.p_a * p.p_b_prime;
  return {p, w};
}

double omega_prime(const StateVector& s_a, const StateVector& s_b, const ChshFamily& f) {
  require_qubit(s_a, "omega_prime");
  require_qubit(s_b, "omega_prime");
  const StateVector s = StateVector::normalized(kron(s_a.amplitudes(), s_b.amplitudes()));
  return prob(s, f.plane23(Setting::W).projector()) + prob(s, f.plane23(Setting::X).projector()) -
         1.0;
}

double omega_prime_closed_form(const LocalProbabilities& p) {
  return (2.0 * p.p_a - 1.0) * (1.0 - p.p_b - p.p_b_prime);
}

ComplexMatrix boole_matrix(const ChshFamily& f) {
  return f.plane23(Setting::W).projector().matrix() + f.plane23(Setting::X).projector().matrix() +
         f.plane23(Setting::Y).projector().matrix() + f.plane14(Setting::Z).projector().matrix() -
         ComplexMatrix::Identity(4, 4);
}

ComplexMatrix boole_matrix(const LocalUnitary& u, const Tolerances& tol) {
  return boole_matrix(build_family(u, tol));
}

ChshReport chsh_sum(const BipartiteState& s, const ChshFamily& f, const Tolerances& tol) {
  if (s.space() != BipartiteSpace(2, 2)) {
    throw DimensionMismatch("chsh_sum: state must live in the 2x2 space");
  }
  const StateVector& v = s.state();
  auto p = [&](const Subspace& h) { return prob(v, h.projector()); };

  ChshReport r;
  for (Setting set : {Setting::W, Setting::X, Setting::Y}) {
    r.chsh_sum += p(f.atom(set, 1)) + p(f.atom(set, 4));
  }
  r.chsh_sum += p(f.atom(Setting::Z, 2)) + p(f.atom(Setting::Z, 3));

  const double p23w = p(f.plane23(Setting::W));
  const double p23x = p(f.plane23(Setting::X));
  r.boole_sum = p23w + p23x + p(f.plane23(Setting::Y)) + p(f.plane14(Setting::Z));
  // On a product state the four plane probabilities sum to 1 + 2 Omega.
  r.omega = 0.5 * (r.boole_sum - 1.0);
  r.omega_prime = p23w + p23x - 1.0;
  r.violated = r.chsh_sum > 3.0 + tol.ineq;
  return r;
}

std::optional<Violation> find_violation(const LocalUnitary& u, const Tolerances& tol) {
  const ChshFamily f = build_family(u, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(boole_matrix(f));
  const double lambda_min = es.eigenvalues()(0);
  if (lambda_min >= -tol.ineq) return std::nullopt;

  const BipartiteSpace space(2, 2);
  BipartiteState state(space, StateVector::normalized(es.eigenvectors().col(0)));
  const ChshReport report = chsh_sum(state, f, tol);
  const Index rank = schmidt_rank(state, tol).rank;
  return Violation{std::move(state), lambda_min, report.chsh_sum, rank};
}

}  // namespace qlattice
