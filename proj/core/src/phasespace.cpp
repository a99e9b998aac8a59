#include "qlattice/phasespace.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qlattice/errors.hpp"

namespace qlattice {

namespace {

long mod(long k, long d) {
  const long r = k % d;
  return r < 0 ? r + d : r;
}

}  // namespace

WeylSystem::WeylSystem(int d, const Tolerances& tol) : d_(d), half_((d + 1) / 2) {
  if (d < 3 || d % 2 == 0) {
    throw UnsupportedDimension("Weyl system needs an odd dimension >= 3 (got " +
                               std::to_string(d) + ")");
  }
  const Index n = d;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  fourier_.resize(n, n);
  z_ = ComplexMatrix::Zero(n, n);
  x_ = ComplexMatrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) fourier_(r, c) = scale * omega(static_cast<long>(r * c));
    z_(r, r) = omega(static_cast<long>(r));
    x_((r + 1) % n, r) = 1.0;
  }

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix f2 = fourier_ * fourier_;
  if ((fourier_.adjoint() * fourier_ - id).norm() > tol.eq || (f2 * f2 - id).norm() > tol.eq) {
    throw PreconditionError("WeylSystem: Fourier matrix failed its unitarity audit");
  }
  if ((fourier_.adjoint() * z_ * fourier_ - x_).norm() > tol.eq) {
    throw PreconditionError("WeylSystem: position/momentum duality audit failed");
  }
}

Complex WeylSystem::omega(long k) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, d_)) / d_;
  return std::polar(1.0, angle);
}

ComplexMatrix displacement(const WeylSystem& sys, long alpha, long beta) {
  const long d = sys.d();
  const long a = mod(alpha, d);
  const long b = mod(beta, d);
  const Complex phase = sys.omega(-static_cast<long>(sys.half()) * a * b);
  // Z^a X^b |m> = w(a (m + b)) |m + b>
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (long m = 0; m < d; ++m) {
    const long target = (m + b) % d;
    out(target, m) = sys.omega(a * target) * phase;
  }
  return out;
}

// ---------------------------------------------------------------------------

const Projector& CoherentFamily::member(long alpha, long beta) const {
  const long d = system_.d();
  return members_.at(static_cast<std::size_t>(mod(alpha, d) * d + mod(beta, d)));
}

CoherentFamily coherent_family(const WeylSystem& sys, const Projector& seed,
                               const Tolerances& tol) {
  const int d = sys.d();
  if (seed.dim() != d) throw DimensionMismatch("coherent_family: seed dimension differs from d");
  const Index t = seed.rank();
  if (t < 1 || t > d - 1) {
    throw RejectedSeed("coherent_family: seed trace must be in 1..d-1 (got " +
                       std::to_string(t) + ")");
  }

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (int n = 0; n < d; ++n) {
    const ComplexVector pos = id.col(n);
    const ComplexVector mom = sys.fourier().col(n);
    if ((seed.matrix() - pos * pos.adjoint()).norm() <= tol.eq) {
      throw RejectedSeed("coherent_family: seed equals position projector |X;" +
                         std::to_string(n) + "><X;" + std::to_string(n) + "|");
    }
    if ((seed.matrix() - mom * mom.adjoint()).norm() <= tol.eq) {
      throw RejectedSeed("coherent_family: seed equals momentum projector |P;" +
                         std::to_string(n) + "><P;" + std::to_string(n) + "|");
    }
  }

  std::vector<Projector> members;
  members.reserve(static_cast<std::size_t>(d) * d);
  for (long a = 0; a < d; ++a) {
    for (long b = 0; b < d; ++b) {
      const ComplexMatrix dab = displacement(sys, a, b);
      ComplexMatrix m = dab * seed.matrix() * dab.adjoint();
      m = 0.5 * (m + m.adjoint());
      members.push_back(Projector::from_matrix(std::move(m), tol));
    }
  }

  const double distinct_cutoff = 10.0 * tol.eq;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (std::abs(members[i].trace() - seed.trace()) > tol.eq) {
      throw RejectedSeed("coherent_family: member trace differs from the seed trace");
    }
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if ((members[i].matrix() - members[j].matrix()).norm() <= distinct_cutoff) {
        throw RejectedSeed("coherent_family: members (" + std::to_string(i / d) + "," +
                           std::to_string(i % d) + ") and (" + std::to_string(j / d) + "," +
                           std::to_string(j % d) + ") coincide");
      }
    }
  }

  CoherentFamily fam(sys, std::move(members));
  if ((resolution_of_identity(fam) - id).norm() > tol.eq) {
    throw RejectedSeed("coherent_family: members do not resolve the identity");
  }
  return fam;
}

Projector generic_seed(int d, int t, Rng& rng, const Tolerances& tol) {
  if (t < 1 || t >= d) throw InvalidInput("generic_seed: need 1 <= t <= d-1");
  return random_subspace(d, t, rng, tol).projector();
}

ComplexMatrix resolution_of_identity(const CoherentFamily& f) {
  const int d = f.system().d();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : f.members()) sum += p.matrix();
  return sum / (static_cast<double>(d) * static_cast<double>(f.trace()));
}

RankReductionReport povm_measure(const BipartiteState& s, const CoherentFamily& fam_a,
                                 const CoherentFamily& fam_b, const Tolerances& tol) {
  const Index d_a = fam_a.system().d();
  const Index d_b = fam_b.system().d();
  if (s.space().d_a() != d_a || s.space().d_b() != d_b) {
    throw DimensionMismatch("povm_measure: families do not match the state's space");
  }
  const Index t_a = fam_a.trace();
  const Index t_b = fam_b.trace();
  const double weight = 1.0 / static_cast<double>(d_a * t_a * d_b * t_b);
  const Index before = schmidt_rank(s, tol).rank;

  RankReductionReport report;
  report.marginals_a.assign(fam_a.members().size(), 0.0);
  report.marginals_b.assign(fam_b.members().size(), 0.0);

  for (std::size_t a = 0; a < fam_a.members().size(); ++a) {
    for (std::size_t b = 0; b < fam_b.members().size(); ++b) {
      OutcomeRecord rec;
      rec.a = a;
      rec.b = b;
      rec.label = static_cast<double>(a * fam_b.members().size() + b);
      rec.rank_before = before;

      const ComplexMatrix projected =
          apply_local_projectors(s.coefficients(), fam_a.members()[a], fam_b.members()[b]);
      const double raw = projected.squaredNorm();
      rec.probability = weight * raw;
      if (raw > tol.prob) {
        rec.collapsed = BipartiteState::normalized_from_coefficients(s.space(), projected);
        rec.rank_after = schmidt_rank(*rec.collapsed, tol).rank;
        rec.reduction = before - *rec.rank_after;
        report.r_ave += rec.probability * static_cast<double>(*rec.reduction);
      }
      report.marginals_a[a] += rec.probability;
      report.marginals_b[b] += rec.probability;
      report.total_probability += rec.probability;
      report.outcomes.push_back(std::move(rec));
    }
  }
  report.upper_bound = static_cast<double>((d_a - t_a) + (d_b - t_b));
  return report;
}

}  // namespace qlattice
