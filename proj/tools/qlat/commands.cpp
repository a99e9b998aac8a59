#include "qlat/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qlat/suites.hpp"
#include "qlattice/qlattice.hpp"

namespace qlat {

using namespace qlattice;

void RunConfig::validate() const {
  tol.validate();
  if (trials < 1) throw InvalidInput("--trials must be at least 1");
  if (threads < 1) throw InvalidInput("--threads must be at least 1");
  if (dim_a < 2 || dim_b < 2 || dim_a > 16 || dim_b > 16) {
    throw InvalidInput("--dims must lie in 2..16 on each side");
  }
}

json RunConfig::echo() const {
  json out = {{"dims", json::array({dim_a, dim_b})},
              {"trials", trials},
              {"seed", seed},
              {"tolerances",
               {{"rank", tol.rank},
                {"eq", tol.eq},
                {"norm", tol.norm},
                {"prob", tol.prob},
                {"ineq", tol.ineq}}}};
  if (command == "povm-demo") out["traces"] = json::array({trace_a, trace_b});
  if (command == "measure") out["spec"] = spec_path;
  return out;
}

namespace {

Report start(const RunConfig& cfg, const char* command) {
  Report r;
  r.command = command;
  RunConfig c = cfg;
  c.command = command;
  r.config = c.echo();
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Tabulated projectors for a = b = 1/sqrt(2).
ComplexMatrix tabulated(const char* which) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  const std::string w = which;
  if (w == "23W") {
    m(1, 1) = m(2, 2) = 1.0;
  } else if (w == "23X") {
    m << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, -0.5, 0, 0, -0.5, 0.5;
  } else if (w == "23Y") {
    m(1, 1) = m(3, 3) = 1.0;
  } else {
    m << 0.5, 0, 0, 0.5, 0, 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0.5, 0, 0, 0.5;
  }
  return m;
}

constexpr std::array<double, 4> kTabulatedSpectrum = {-0.30, 0.45, 1.55, 2.30};

}  // namespace

Report cmd_reproduce_chsh(const RunConfig& cfg) {
  Report r = start(cfg, "reproduce-chsh");
  const Tolerances& tol = cfg.tol;
  const LocalUnitary u = LocalUnitary::balanced();
  const ChshFamily f = build_family(u, tol);

  struct Plane {
    const char* name;
    const Subspace& h;
  };
  const Plane planes[] = {{"23W", f.plane23(Setting::W)},
                          {"23X", f.plane23(Setting::X)},
                          {"23Y", f.plane23(Setting::Y)},
                          {"14Z", f.plane14(Setting::Z)}};
  for (const Plane& p : planes) {
    const ComplexMatrix m = p.h.projector().matrix();
    r.at_most(std::string("projector_") + p.name + "_entrywise", max_abs_diff(m, tabulated(p.name)),
              0.0, 1e-12);
    r.data["projectors"][p.name] = to_json(m);
  }

  const ComplexMatrix m = boole_matrix(f);
  const std::vector<double> ev = hermitian_eigenvalues(m, tol);
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(ev[i] - kTabulatedSpectrum[i]));
  r.add({"boole_matrix_eigenvalues", worst <= 0.005, ev, kTabulatedSpectrum, 0.005});
  r.near("boole_matrix_trace", m.trace().real(), 4.0, tol.eq);

  // The tabulated spectrum is that of M assembled from the tabulated projectors.
  const ComplexMatrix mt = tabulated("23W") + tabulated("23X") + tabulated("23Y") +
                           tabulated("14Z") - ComplexMatrix::Identity(4, 4);
  const std::vector<double> evt = hermitian_eigenvalues(mt, tol);
  double worst_t = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst_t = std::max(worst_t, std::abs(evt[i] - kTabulatedSpectrum[i]));
  r.add({"tabulated_projectors_reproduce_tabulated_spectrum", worst_t <= 0.01, evt,
         kTabulatedSpectrum, 0.01});

  const Lemma1Dims dims = lemma1_check(f, tol);
  r.equal("lemma1_meet_dim", dims.meet_dim, 0);
  r.equal("lemma1_join_dim", dims.join_dim, 4);

  const auto v = find_violation(u, tol);
  r.truth("violation_found", v.has_value());
  if (v) {
    r.at_least("violation_chsh_sum", v->chsh_sum, 3.0, 0.0);
    r.equal("violation_schmidt_rank", v->schmidt_rank, 2);
    r.data["violation"] = {{"lambda_min", v->lambda_min},
                           {"chsh_sum", v->chsh_sum},
                           {"schmidt_rank", v->schmidt_rank},
                           {"state", to_json(v->state.amplitudes())}};
  }
  r.data["boole_matrix"] = to_json(m);
  r.data["boole_eigenvalues"] = ev;
  return r;
}

Report cmd_reproduce_measurement(const RunConfig& cfg) {
  Report r = start(cfg, "reproduce-measurement");
  const Tolerances& tol = cfg.tol;
  const BipartiteSpace space(3, 3);
  ComplexMatrix coeff = ComplexMatrix::Zero(3, 3);
  coeff(0, 0) = 1.0;
  coeff(0, 1) = 2.0;
  coeff(1, 1) = 1.0;
  coeff(2, 2) = 3.0;
  const BipartiteState s = BipartiteState::from_coefficients(space, coeff / std::sqrt(15.0), tol);
  const ProductMeasurement m(OrthogonalDecomposition::from_index_sets(3, {{0, 1}, {2}}, tol),
                             OrthogonalDecomposition::from_index_sets(3, {{0}, {1, 2}}, tol));
  const RankReductionReport rep = measure_all(s, m, tol);

  r.equal("initial_rank", schmidt_rank(s, tol).rank, 3);
  const double expected_p[4] = {1.0 / 15.0, 1.0 / 3.0, 0.0, 3.0 / 5.0};
  const char* names[4] = {"11", "12", "21", "22"};

  auto basis = [&](std::initializer_list<std::pair<std::pair<int, int>, double>> terms) {
    ComplexVector v = ComplexVector::Zero(9);
    for (const auto& [ij, c] : terms) v(ij.first * 3 + ij.second) = c;
    return ComplexVector(v / v.norm());
  };
  const ComplexVector expected_state[4] = {basis({{{0, 0}, 1.0}}),
                                           basis({{{0, 1}, 2.0}, {{1, 1}, 1.0}}),
                                           ComplexVector(), basis({{{2, 2}, 1.0}})};

  json outcomes = json::array();
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    const OutcomeRecord& o = rep.outcomes[i];
    const std::string tag = std::string("outcome_") + names[i];
    r.near(tag + "_probability", o.probability, expected_p[i], 1e-10);
    json rec = {{"a", o.a + 1}, {"b", o.b + 1}, {"probability", o.probability},
                {"rank_before", o.rank_before}};
    if (i == 2) {
      r.truth(tag + "_has_no_collapsed_state", !o.collapsed.has_value());
    } else if (o.collapsed) {
      const ComplexVector& got = o.collapsed->amplitudes();
      const Complex overlap = expected_state[i].dot(got);
      const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
      r.at_most(tag + "_collapsed_state_distance", (got - phase * expected_state[i]).norm(), 0.0,
                1e-9);
      r.equal(tag + "_reduction", o.reduction.value_or(-1), 2);
      rec["collapsed"] = to_json(o.collapsed->amplitudes());
      rec["rank_after"] = *o.rank_after;
      rec["reduction"] = *o.reduction;
    } else {
      r.truth(tag + "_has_collapsed_state", false);
    }
    outcomes.push_back(std::move(rec));
  }
  r.near("average_reduction", rep.r_ave, 2.0, 1e-12);
  r.near("average_reduction_bound", rep.upper_bound, 8.0 / 3.0, 1e-10);
  r.at_most("average_reduction_within_bound", rep.r_ave, rep.upper_bound, tol.ineq);

  r.data["outcomes"] = std::move(outcomes);
  r.data["marginals_a"] = rep.marginals_a;
  r.data["marginals_b"] = rep.marginals_b;
  r.data["r_ave"] = rep.r_ave;
  r.data["upper_bound"] = rep.upper_bound;
  return r;
}

Report cmd_verify(const RunConfig& cfg) {
  Report r = start(cfg, "verify");
  suites::lattice(cfg, r);
  suites::bipartite(cfg, r);
  suites::chsh(cfg, r);
  suites::measurement(cfg, r);
  suites::phasespace(cfg, r);
  return r;
}

Report cmd_search_violations(const RunConfig& cfg) {
  Report r = start(cfg, "search-violations");
  const Tolerances& tol = cfg.tol;

  std::vector<std::pair<double, double>> grid;
  for (int i = 1; i <= 9; ++i) {
    for (int k = 0; k < 8; ++k) grid.emplace_back(0.1 * i, std::numbers::pi * k / 4.0);
  }
  grid.emplace_back(std::numbers::sqrt2 / 2.0, 0.0);

  json points = json::array();
  long long found = 0;
  double worst_projection = -1.0;
  double balanced_sum = 0.0;
  long long balanced_rank = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto [abs_a, phase] = grid[g];
    const bool balanced = g + 1 == grid.size();
    const LocalUnitary u = balanced ? LocalUnitary::balanced()
                                    : LocalUnitary(abs_a, std::polar(std::sqrt(1.0 - abs_a * abs_a), phase), tol);
    const ChshFamily f = build_family(u, tol);
    const auto ev = hermitian_eigenvalues(boole_matrix(f), tol);
    json p = {{"abs_a", abs_a}, {"phase_b", phase}, {"lambda_min", ev.front()}};
    if (const auto v = find_violation(u, tol)) {
      ++found;
      p["chsh_sum"] = v->chsh_sum;
      p["schmidt_rank"] = v->schmidt_rank;
      if (balanced) {
        balanced_sum = v->chsh_sum;
        balanced_rank = v->schmidt_rank;
        r.data["balanced_violation"] = {{"state", to_json(v->state.amplitudes())},
                                        {"chsh_sum", v->chsh_sum},
                                        {"schmidt_rank", v->schmidt_rank}};
      }
      // Leading Schmidt term as a product state.
      Eigen::JacobiSVD<ComplexMatrix> svd(v->state.coefficients(),
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
      const BipartiteState prod = BipartiteState::product(
          StateVector::normalized(svd.matrixU().col(0)),
          StateVector::normalized(svd.matrixV().col(0).conjugate()));
      const double ps = chsh_sum(prod, f, tol).chsh_sum;
      p["product_projection_chsh_sum"] = ps;
      worst_projection = std::max(worst_projection, ps);
    }
    points.push_back(std::move(p));
  }
  r.at_least("chsh_violations_found", static_cast<double>(found), 1.0, 0.0);
  r.at_least("balanced_violation_chsh_sum", balanced_sum, 3.25, 0.0);
  r.equal("balanced_violation_schmidt_rank", balanced_rank, 2);
  r.at_most("violator_product_projection_chsh_sum", worst_projection, 3.0, tol.ineq);
  r.data["grid"] = std::move(points);

  // Random (s, h1, h2) with the most negative classical Boole margin.
  struct Draw {
    double upper = 0.0;
    double sandwich = 0.0;
    ComplexVector s;
    ComplexMatrix h1, h2;
  };
  const auto draws = parallel_map<Draw>(cfg.trials, cfg.threads, [&](int i) {
    Rng rng = Rng(cfg.seed).child(0x5ea7c4).child(static_cast<std::uint64_t>(i));
    const Index n = 2 + static_cast<Index>(rng.uniform() * 3);
    const Subspace h1 = random_subspace(n, 1, rng, tol);
    const Subspace h2 = random_subspace(n, 1 + static_cast<Index>(rng.uniform() * (n - 1)), rng, tol);
    const StateVector s = random_state(n, rng);
    const BoundsReport b = quantum_bounds(s, h1, h2, tol);
    return Draw{classical_bounds_violation(s, h1, h2, tol).upper,
                std::min(b.p_join - b.b_lower, b.b_upper - b.p_join), s.amplitudes(), h1.basis(),
                h2.basis()};
  });
  std::size_t best = 0;
  double sandwich = std::numeric_limits<double>::infinity();
  long long violating = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (draws[i].upper < draws[best].upper) best = i;
    if (draws[i].upper < -1e-6) ++violating;
    sandwich = std::min(sandwich, draws[i].sandwich);
  }
  r.at_most("classical_boole_violation_margin", draws[best].upper, -1e-6, 0.0);
  r.at_least("quantum_sandwich_slack", sandwich, 0.0, tol.ineq);
  r.data["classical_boole"] = {{"draws", draws.size()},
                               {"violating_draws", violating},
                               {"best_upper_margin", draws[best].upper},
                               {"state", to_json(draws[best].s)},
                               {"h1_basis", to_json(draws[best].h1)},
                               {"h2_basis", to_json(draws[best].h2)}};
  return r;
}

Report cmd_povm_demo(const RunConfig& cfg) {
  Report r = start(cfg, "povm-demo");
  const Tolerances& tol = cfg.tol;
  const WeylSystem sys_a(cfg.dim_a, tol);
  const WeylSystem sys_b(cfg.dim_b, tol);
  Rng master(cfg.seed);
  Rng seed_rng = master.child(0);
  const CoherentFamily fa = coherent_family(sys_a, generic_seed(cfg.dim_a, cfg.trace_a, seed_rng, tol), tol);
  const CoherentFamily fb = coherent_family(sys_b, generic_seed(cfg.dim_b, cfg.trace_b, seed_rng, tol), tol);
  r.at_most("resolution_of_identity_a",
            (resolution_of_identity(fa) - ComplexMatrix::Identity(cfg.dim_a, cfg.dim_a)).norm(), 0.0,
            tol.eq);
  r.at_most("resolution_of_identity_b",
            (resolution_of_identity(fb) - ComplexMatrix::Identity(cfg.dim_b, cfg.dim_b)).norm(), 0.0,
            tol.eq);

  const BipartiteSpace space(cfg.dim_a, cfg.dim_b);
  struct Result {
    double r_ave = 0.0, bound = 0.0, total = 0.0;
    Index rank = 0;
  };
  const auto results = parallel_map<Result>(cfg.trials, cfg.threads, [&](int i) {
    Rng rng = master.child(static_cast<std::uint64_t>(i) + 1);
    const BipartiteState s(space, random_state(space.dim(), rng));
    const RankReductionReport rep = povm_measure(s, fa, fb, tol);
    return Result{rep.r_ave, rep.upper_bound, rep.total_probability, schmidt_rank(s, tol).rank};
  });
  double excess = -std::numeric_limits<double>::infinity(), defect = 0.0, mean = 0.0;
  json rows = json::array();
  for (const Result& res : results) {
    excess = std::max(excess, res.r_ave - res.bound);
    defect = std::max(defect, std::abs(res.total - 1.0));
    mean += res.r_ave;
    rows.push_back({{"rank", res.rank}, {"r_ave", res.r_ave}});
  }
  mean /= static_cast<double>(results.size());
  const double bound = static_cast<double>((cfg.dim_a - cfg.trace_a) + (cfg.dim_b - cfg.trace_b));
  r.at_most("probability_completeness", defect, 0.0, tol.eq);
  r.at_most("average_reduction_minus_bound", excess, 0.0, tol.ineq);
  r.data["upper_bound"] = bound;
  r.data["mean_r_ave"] = mean;
  r.data["states"] = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// measure --spec FILE

namespace {

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidInput("expected a number or an [re, im] pair");
}

ComplexMatrix parse_matrix(const json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const json& e = j.at("entries");
  if (static_cast<Index>(e.size()) != rows * cols) throw InvalidInput("matrix entry count mismatch");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = parse_complex(e[static_cast<std::size_t>(i * cols + k)]);
  }
  return m;
}

OrthogonalDecomposition parse_side(const json& j, Index dim, const Tolerances& tol) {
  if (!j.is_array() || j.empty()) throw InvalidInput("each side needs a nonempty list of projectors");
  if (j.front().is_array()) {
    std::vector<std::vector<Index>> supports;
    for (const json& s : j) supports.push_back(s.get<std::vector<Index>>());
    return OrthogonalDecomposition::from_index_sets(dim, supports, tol);
  }
  std::vector<Projector> ps;
  for (const json& m : j) ps.push_back(Projector::from_matrix(parse_matrix(m), tol));
  return OrthogonalDecomposition::from_projectors(std::move(ps), tol);
}

}  // namespace

Report cmd_measure(const RunConfig& cfg) {
  Report r = start(cfg, "measure");
  const Tolerances& tol = cfg.tol;
  std::ifstream in(cfg.spec_path);
  if (!in) throw InvalidInput("cannot open measurement spec: " + cfg.spec_path);
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed measurement spec: ") + e.what());
  }

  try {
    const auto dims = spec.at("dims").get<std::vector<Index>>();
    if (dims.size() != 2) throw InvalidInput("dims must have two entries");
    const BipartiteSpace space(dims[0], dims[1]);
    const json& amps = spec.at("state");
    if (static_cast<Index>(amps.size()) != space.dim()) throw InvalidInput("state length mismatch");
    ComplexVector v(space.dim());
    for (Index i = 0; i < v.size(); ++i) v(i) = parse_complex(amps[static_cast<std::size_t>(i)]);
    const BipartiteState s(space, StateVector::normalized(v));

    OrthogonalDecomposition a = parse_side(spec.at("side_a"), space.d_a(), tol);
    OrthogonalDecomposition b = parse_side(spec.at("side_b"), space.d_b(), tol);
    Eigen::MatrixXd labels;
    if (spec.contains("labels")) {
      const auto rows = spec["labels"].get<std::vector<std::vector<double>>>();
      labels.resize(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
      for (Index i = 0; i < labels.rows(); ++i) {
        if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != labels.cols()) {
          throw InvalidInput("labels must form a rectangular grid");
        }
        for (Index k = 0; k < labels.cols(); ++k) labels(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      }
    }
    const ProductMeasurement m(a, b, labels);
    const RankReductionReport rep = measure_all(s, m, tol);

    long long outside = 0;
    json outcomes = json::array();
    for (const OutcomeRecord& o : rep.outcomes) {
      json rec = {{"a", o.a}, {"b", o.b}, {"label", o.label}, {"probability", o.probability},
                  {"rank_before", o.rank_before}};
      if (o.collapsed) {
        const SylvesterWindow w = sylvester_bounds(s, a[o.a], b[o.b], tol);
        if (!w.contains(static_cast<long>(*o.rank_after))) ++outside;
        rec["rank_after"] = *o.rank_after;
        rec["reduction"] = *o.reduction;
        rec["sylvester_window"] = json::array({w.lo, w.hi});
        rec["collapsed"] = to_json(o.collapsed->amplitudes());
      }
      outcomes.push_back(std::move(rec));
    }
    r.near("probability_completeness", rep.total_probability, 1.0, tol.eq);
    r.equal("sylvester_window_violations", outside, 0);
    r.at_most("average_reduction_within_bound", rep.r_ave, rep.upper_bound, tol.ineq);
    r.data["outcomes"] = std::move(outcomes);
    r.data["marginals_a"] = rep.marginals_a;
    r.data["marginals_b"] = rep.marginals_b;
    r.data["r_ave"] = rep.r_ave;
    r.data["upper_bound"] = rep.upper_bound;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed measurement spec: ") + e.what());
  }
  return r;
}

Report run(const RunConfig& cfg) {
  cfg.validate();
  const std::string& c = cfg.command;
  if (c == "reproduce-chsh") return cmd_reproduce_chsh(cfg);
  if (c == "reproduce-measurement") return cmd_reproduce_measurement(cfg);
  if (c == "verify") return cmd_verify(cfg);
  if (c == "search-violations") return cmd_search_violations(cfg);
  if (c == "povm-demo") return cmd_povm_demo(cfg);
  if (c == "measure") return cmd_measure(cfg);
  throw InvalidInput("unknown command: " + c);
}

}  // namespace qlat
