#include "qlat/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "qlattice/qlattice.hpp"

namespace qlat::suites {

using namespace qlattice;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum SuiteId : std::uint64_t { kLattice = 1, kBipartite, kChsh, kMeasurement, kPhasespace };

Rng trial_rng(const RunConfig& cfg, SuiteId suite, int i) {
  return Rng(cfg.seed).child(suite).child(static_cast<std::uint64_t>(i));
}

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return lo + static_cast<Index>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

LocalUnitary random_local_unitary(Rng& rng, const Tolerances& tol) {
  const Complex a = rng.complex_normal();
  const Complex b = rng.complex_normal();
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return LocalUnitary(a / n, b / n, tol);
}

OrthogonalDecomposition random_decomposition(Index n, Rng& rng, const Tolerances& tol) {
  const ComplexMatrix u = random_unitary(n, rng);
  std::vector<Projector> ps;
  Index start = 0;
  while (start < n) {
    const Index len = uniform_index(rng, 1, n - start);
    ps.push_back(orthonormalize(u.middleCols(start, len), tol).projector());
    start += len;
  }
  return OrthogonalDecomposition::from_projectors(std::move(ps), tol);
}

// First error message by trial index, or empty.
template <class T>
void report_errors(Report& r, const std::string& suite, const std::vector<T>& trials) {
  std::size_t count = 0;
  std::string first;
  for (const T& t : trials) {
    if (t.error.empty()) continue;
    if (count++ == 0) first = t.error;
  }
  Check c{suite + ".trials_completed", count == 0, static_cast<long long>(trials.size() - count),
          static_cast<long long>(trials.size()), nullptr};
  r.add(c);
  if (count > 0) r.data[suite]["first_error"] = first;
}

}  // namespace

// ---------------------------------------------------------------------------

namespace {

struct LatticeTrial {
  double trace_defect = 0.0;
  double commutator = 0.0;
  double antisymmetry = 0.0;
  double sandwich_slack = kInf;
  bool flagged = false;
  double flagged_d = 0.0;
  double flagged_margin = kInf;
  std::string error;
};

// Every fourth trial is generic; the others are built so that one sufficient
// condition holds.
LatticeTrial lattice_trial(const RunConfig& cfg, int i) {
  LatticeTrial t;
  const Tolerances& tol = cfg.tol;
  try {
    Rng rng = trial_rng(cfg, kLattice, i);
    const Index n = uniform_index(rng, 2, std::max<Index>(2, Index{cfg.dim_a} * cfg.dim_b));
    Subspace h1 = random_subspace(n, uniform_index(rng, 1, n), rng, tol);
    Subspace h2 = random_subspace(n, uniform_index(rng, 1, n), rng, tol);
    StateVector s = random_state(n, rng);
    switch (i % 4) {
      case 1: {  // commuting: coordinate subspaces in a common random basis
        const ComplexMatrix u = random_unitary(n, rng);
        const Index k1 = uniform_index(rng, 1, n);
        const Index k2 = uniform_index(rng, 1, n);
        const Index off = uniform_index(rng, 0, n - k2);
        h1 = orthonormalize(u.leftCols(k1), tol);
        h2 = orthonormalize(u.middleCols(off, k2), tol);
        break;
      }
      case 2: {  // state in the meet
        const Subspace shared = random_subspace(n, 1, rng, tol);
        h1 = join(h1, shared, tol);
        h2 = join(h2, shared, tol);
        s = StateVector::normalized(shared.basis().col(0));
        break;
      }
      case 3: {  // state orthogonal to the join
        if (n >= 3) {
          h1 = random_subspace(n, 1, rng, tol);
          h2 = random_subspace(n, uniform_index(rng, 1, n - 2), rng, tol);
          const Subspace perp = complement(join(h1, h2, tol), tol);
          ComplexVector c(perp.dim());
          for (Index j = 0; j < c.size(); ++j) c(j) = rng.complex_normal();
          s = StateVector::normalized(perp.basis() * c);
        }
        break;
      }
      default:
        break;
    }

    const CorrectionOperator d = correction_operator(h1, h2, tol);
    t.trace_defect = std::abs(d.trace) / static_cast<double>(n);
    t.commutator = commutator_residual(h1, h2, tol);
    t.antisymmetry =
        (correction_operator(complement(h1, tol), complement(h2, tol), tol).matrix + d.matrix).norm();

    const BoundsReport b = quantum_bounds(s, h1, h2, tol);
    t.sandwich_slack = std::min(b.p_join - b.b_lower, b.b_upper - b.p_join);
    t.flagged = b.conditions.any();
    if (t.flagged) {
      t.flagged_d = std::abs(b.d_value);
      const ClassicalMargins m = classical_bounds_violation(s, h1, h2, tol);
      t.flagged_margin = std::min(m.upper, m.lower);
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

}  // namespace

void lattice(const RunConfig& cfg, Report& r) {
  const auto trials =
      parallel_map<LatticeTrial>(cfg.trials, cfg.threads, [&](int i) { return lattice_trial(cfg, i); });
  double trace = 0.0, comm = 0.0, anti = 0.0, slack = kInf, fd = 0.0, fm = kInf;
  long long flagged = 0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    trace = std::max(trace, t.trace_defect);
    comm = std::max(comm, t.commutator);
    anti = std::max(anti, t.antisymmetry);
    slack = std::min(slack, t.sandwich_slack);
    if (t.flagged) {
      ++flagged;
      fd = std::max(fd, t.flagged_d);
      fm = std::min(fm, t.flagged_margin);
    }
  }
  report_errors(r, "lattice", trials);
  r.at_most("lattice.correction_trace_per_dim", trace, 0.0, cfg.tol.eq);
  r.at_most("lattice.commutator_identity_residual", comm, 0.0, cfg.tol.eq);
  r.at_most("lattice.complement_antisymmetry", anti, 0.0, cfg.tol.eq);
  r.at_least("lattice.sandwich_slack", slack, 0.0, cfg.tol.ineq);
  r.truth("lattice.sufficient_condition_trials_present", flagged > 0);
  r.at_most("lattice.flagged_correction_expectation", fd, 0.0, cfg.tol.ineq);
  r.at_least("lattice.flagged_classical_margin", flagged > 0 ? fm : 0.0, 0.0, cfg.tol.ineq);
  r.data["lattice"]["flagged_trials"] = flagged;
}

// ---------------------------------------------------------------------------

namespace {

struct BipartiteTrial {
  double product_residual = 0.0;
  bool inclusions = true;
  double schmidt_drift = 0.0;
  std::optional<Index> tensor_rank;
  std::string error;
};

BipartiteTrial bipartite_trial(const RunConfig& cfg, int i) {
  BipartiteTrial t;
  const Tolerances& tol = cfg.tol;
  try {
    Rng rng = trial_rng(cfg, kBipartite, i);
    const Index da = cfg.dim_a, db = cfg.dim_b;
    auto draw = [&](Index n) { return random_subspace(n, uniform_index(rng, 0, n), rng, tol); };
    const Subspace h1a = draw(da), h2a = draw(da), h1b = draw(db), h2b = draw(db);
    t.product_residual = verify_product_lattice(h1a, h2a, h1b, h2b, tol).max();
    const InclusionFlags f = verify_inclusions(h1a, h2a, h1b, h2b, tol);
    t.inclusions = f.meet_inclusion && f.join_inclusion;

    const BipartiteSpace space(da, db);
    const BipartiteState s(space, random_state(da * db, rng));
    const ComplexMatrix rotated = random_unitary(da, rng) * s.coefficients() *
                                  random_unitary(db, rng).transpose();
    const auto sv0 = schmidt_rank(s, tol).singular_values;
    const auto sv1 = schmidt_rank(BipartiteState::from_coefficients(space, rotated, tol), tol)
                         .singular_values;
    for (std::size_t k = 0; k < sv0.size(); ++k) {
      t.schmidt_drift = std::max(t.schmidt_drift, std::abs(sv0[k] - sv1[k]));
    }

    if (i % 25 == 0) {
      const Subspace ha = random_subspace(da, uniform_index(rng, 1, da), rng, tol);
      const Subspace hb = random_subspace(db, uniform_index(rng, 1, db), rng, tol);
      t.tensor_rank = min_rank(tensor_subspace(ha, hb, tol), space, rng, {}, tol).upper_bound;
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

}  // namespace

void bipartite(const RunConfig& cfg, Report& r) {
  const auto trials = parallel_map<BipartiteTrial>(cfg.trials, cfg.threads,
                                                   [&](int i) { return bipartite_trial(cfg, i); });
  double residual = 0.0, drift = 0.0;
  long long inclusion_failures = 0, tensor_max = 0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    residual = std::max(residual, t.product_residual);
    drift = std::max(drift, t.schmidt_drift);
    inclusion_failures += t.inclusions ? 0 : 1;
    if (t.tensor_rank) tensor_max = std::max<long long>(tensor_max, *t.tensor_rank);
  }
  report_errors(r, "bipartite", trials);
  r.at_most("bipartite.product_lattice_residual", residual, 0.0, cfg.tol.eq);
  r.equal("bipartite.inclusion_failures", inclusion_failures, 0);
  r.at_most("bipartite.schmidt_local_unitary_drift", drift, 0.0, cfg.tol.eq);
  r.equal("bipartite.tensor_subspace_min_rank", tensor_max, 1);
}

// ---------------------------------------------------------------------------

namespace {

struct ChshTrial {
  double omega = kInf;
  double chsh = -kInf;
  double omega_prime = 0.0;
  double boole_identity = 0.0;
  double two_path = 0.0;
  std::string error;
};

ChshTrial chsh_trial(const RunConfig& cfg, int i) {
  ChshTrial t;
  const Tolerances& tol = cfg.tol;
  try {
    Rng rng = trial_rng(cfg, kChsh, i);
    const LocalUnitary u = random_local_unitary(rng, tol);
    const ChshFamily f = build_family(u, tol);
    const StateVector sa = random_state(2, rng);
    const StateVector sb = random_state(2, rng);
    const OmegaResult om = omega(sa, sb, u);
    const ChshReport rep = chsh_sum(BipartiteState::product(sa, sb), f, tol);
    t.omega = om.omega;
    t.chsh = rep.chsh_sum;
    t.omega_prime = omega_prime(sa, sb, f);
    t.boole_identity = std::abs(rep.omega - om.omega);

    const BipartiteState e(BipartiteSpace(2, 2), random_state(4, rng));
    const ChshReport er = chsh_sum(e, f, tol);
    t.two_path = std::abs(er.chsh_sum - (3.0 - expectation(e.state(), boole_matrix(f))));
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

}  // namespace

void chsh(const RunConfig& cfg, Report& r) {
  const auto trials =
      parallel_map<ChshTrial>(cfg.trials, cfg.threads, [&](int i) { return chsh_trial(cfg, i); });
  double om = kInf, cs = -kInf, op_min = kInf, op_max = -kInf, ident = 0.0, two = 0.0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    om = std::min(om, t.omega);
    cs = std::max(cs, t.chsh);
    op_min = std::min(op_min, t.omega_prime);
    op_max = std::max(op_max, t.omega_prime);
    ident = std::max(ident, t.boole_identity);
    two = std::max(two, t.two_path);
  }
  report_errors(r, "chsh", trials);
  r.at_least("chsh.product_omega_min", om, 0.0, cfg.tol.ineq);
  r.at_most("chsh.product_sum_max", cs, 3.0, cfg.tol.ineq);
  r.at_most("chsh.boole_sum_omega_identity", ident, 0.0, cfg.tol.ineq);
  r.at_most("chsh.two_path_sum_residual", two, 0.0, cfg.tol.ineq);
  if (cfg.trials >= 50) r.truth("chsh.omega_prime_takes_both_signs", op_min < 0.0 && op_max > 0.0);
  r.data["chsh"]["omega_prime_range"] = json::array({op_min, op_max});
}

// ---------------------------------------------------------------------------

namespace {

struct MeasurementTrial {
  long long sylvester_violations = 0;
  long long chain_violations = 0;
  long long branches = 0;
  double bound_excess = -kInf;
  double probability_defect = 0.0;
  std::string error;
};

MeasurementTrial measurement_trial(const RunConfig& cfg, int i) {
  MeasurementTrial t;
  const Tolerances& tol = cfg.tol;
  try {
    Rng rng = trial_rng(cfg, kMeasurement, i);
    const Index da = cfg.dim_a, db = cfg.dim_b;
    const BipartiteState s(BipartiteSpace(da, db), random_state(da * db, rng));
    const OrthogonalDecomposition a = random_decomposition(da, rng, tol);
    const OrthogonalDecomposition b = random_decomposition(db, rng, tol);
    const RankReductionReport rep = measure_all(s, ProductMeasurement(a, b), tol);
    t.bound_excess = rep.r_ave - rep.upper_bound;
    t.probability_defect = std::abs(rep.total_probability - 1.0);
    for (const OutcomeRecord& o : rep.outcomes) {
      if (!o.rank_after) continue;
      ++t.branches;
      const SylvesterWindow w = sylvester_bounds(s, a[o.a], b[o.b], tol);
      if (!w.contains(static_cast<long>(*o.rank_after))) ++t.sylvester_violations;
      const RankReductions rr = rank_reductions(s, a[o.a], b[o.b], tol);
      if (rr.r_a && rr.r_b && rr.r_ab) {
        const bool ok = *rr.r_ab <= *rr.r_a + *rr.r_b && *rr.r_ab >= std::max(*rr.r_a, *rr.r_b) &&
                        *rr.r_a <= da - a[o.a].rank() && *rr.r_b <= db - b[o.b].rank();
        if (!ok) ++t.chain_violations;
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

}  // namespace

void measurement(const RunConfig& cfg, Report& r) {
  const auto trials = parallel_map<MeasurementTrial>(
      cfg.trials, cfg.threads, [&](int i) { return measurement_trial(cfg, i); });
  long long syl = 0, chain = 0, branches = 0;
  double excess = -kInf, prob_defect = 0.0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    syl += t.sylvester_violations;
    chain += t.chain_violations;
    branches += t.branches;
    excess = std::max(excess, t.bound_excess);
    prob_defect = std::max(prob_defect, t.probability_defect);
  }
  report_errors(r, "measurement", trials);
  r.at_most("measurement.probability_completeness", prob_defect, 0.0, cfg.tol.eq);
  r.equal("measurement.sylvester_window_violations", syl, 0);
  r.equal("measurement.frobenius_chain_violations", chain, 0);
  r.at_most("measurement.average_reduction_minus_bound", excess, 0.0, cfg.tol.ineq);
  r.data["measurement"]["branches_checked"] = branches;
}

// ---------------------------------------------------------------------------

namespace {

struct PovmTrial {
  double excess = -kInf;
  double probability_defect = 0.0;
  std::string error;
};

}  // namespace

void phasespace(const RunConfig& cfg, Report& r) {
  const Tolerances& tol = cfg.tol;
  double fourier = 0.0, duality = 0.0, resolution = 0.0;
  std::string error;
  try {
    for (int d : {3, 5, 7}) {
      const WeylSystem sys(d, tol);
      const ComplexMatrix& f = sys.fourier();
      const ComplexMatrix id = ComplexMatrix::Identity(d, d);
      fourier = std::max(fourier, (f * f * f * f - id).norm());
      duality = std::max(duality, (f.adjoint() * sys.z_op() * f - sys.x_op()).norm());
      Rng rng = Rng(cfg.seed).child(kPhasespace).child(static_cast<std::uint64_t>(d));
      const CoherentFamily fam = coherent_family(sys, generic_seed(d, 1, rng, tol), tol);
      resolution = std::max(resolution, (resolution_of_identity(fam) - id).norm());
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  r.truth("phasespace.families_built", error.empty());
  if (!error.empty()) r.data["phasespace"]["error"] = error;
  r.at_most("phasespace.fourier_fourth_power", fourier, 0.0, tol.eq);
  r.at_most("phasespace.fourier_duality", duality, 0.0, tol.eq);
  r.at_most("phasespace.resolution_of_identity", resolution, 0.0, tol.eq);

  const int states = std::min(cfg.trials, 50);
  const auto trials = parallel_map<PovmTrial>(states, cfg.threads, [&](int i) {
    PovmTrial t;
    try {
      Rng fam_rng = Rng(cfg.seed).child(kPhasespace).child(100);
      const WeylSystem sys(3, tol);
      const CoherentFamily fa = coherent_family(sys, generic_seed(3, 1, fam_rng, tol), tol);
      const CoherentFamily fb = coherent_family(sys, generic_seed(3, 2, fam_rng, tol), tol);
      Rng rng = trial_rng(cfg, kPhasespace, i + 1000);
      const BipartiteState s(BipartiteSpace(3, 3), random_state(9, rng));
      const RankReductionReport rep = povm_measure(s, fa, fb, tol);
      t.excess = rep.r_ave - rep.upper_bound;
      t.probability_defect = std::abs(rep.total_probability - 1.0);
    } catch (const std::exception& e) {
      t.error = e.what();
    }
    return t;
  });
  double excess = -kInf, defect = 0.0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    excess = std::max(excess, t.excess);
    defect = std::max(defect, t.probability_defect);
  }
  report_errors(r, "phasespace", trials);
  r.at_most("phasespace.povm_probability_completeness", defect, 0.0, tol.eq);
  r.at_most("phasespace.povm_average_reduction_minus_bound", excess, 0.0, tol.ineq);
}

}  // namespace qlat::suites
