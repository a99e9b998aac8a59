// qlat: reproduce the worked examples, run randomized invariant suites and
// search for violating states.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qlat/commands.hpp"
#include "qlattice/errors.hpp"

namespace {

struct Options {
  qlat::RunConfig cfg;
  std::vector<int> dims;
  std::string format_name = "json";
  std::string out;
  bool timing = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->option_defaults()->always_capture_default();
  sub->add_option("--dims", o.dims, "Subsystem dimensions A B")->expected(2);
  sub->add_option("--trials", o.cfg.trials, "Number of randomized trials");
  sub->add_option("--seed", o.cfg.seed, "Master seed (default: $QLAT_SEED or 42)");
  sub->add_option("--tol-rank", o.cfg.tol.rank, "Relative singular-value cutoff");
  sub->add_option("--tol-eq", o.cfg.tol.eq, "Matrix equality tolerance");
  sub->add_option("--tol-ineq", o.cfg.tol.ineq, "Inequality slack");
  sub->add_option("--threads", o.cfg.threads, "Worker threads");
  sub->add_option("--format", o.format_name, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", o.out, "Write the report here instead of stdout");
  sub->add_flag("--timing", o.timing, "Include wall-clock duration in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-logic inequalities on finite-dimensional Hilbert spaces"};
  app.require_subcommand(1);

  Options o;
  if (const char* env = std::getenv("QLAT_SEED")) {
    try {
      o.cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "qlat: ignoring unparsable QLAT_SEED\n";
    }
  }

  const std::pair<const char*, const char*> commands[] = {
      {"reproduce-chsh", "Two-qubit projector family, Boole matrix and violating state"},
      {"reproduce-measurement", "Rank reduction by a product measurement on a 3x3 state"},
      {"verify", "Randomized invariant suites over all modules"},
      {"search-violations", "CHSH violations over a unitary grid and classical Boole violations"},
      {"povm-demo", "Coherent-projector POVM rank reduction"},
      {"measure", "Product measurement described by a JSON file"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    if (std::string(name) == "povm-demo") {
      sub->add_option("--trace-a", o.cfg.trace_a, "Seed projector trace on A");
      sub->add_option("--trace-b", o.cfg.trace_b, "Seed projector trace on B");
    }
    if (std::string(name) == "measure") {
      sub->add_option("--spec", o.cfg.spec_path, "Measurement JSON file")->required();
    }
    sub->final_callback([&o, name = std::string(name)] { o.cfg.command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  const qlat::Format format = o.format_name == "csv"    ? qlat::Format::csv
                             : o.format_name == "text" ? qlat::Format::text
                                                       : qlat::Format::json;
  if (o.dims.size() == 2) {
    o.cfg.dim_a = o.dims[0];
    o.cfg.dim_b = o.dims[1];
  }

  const auto t0 = std::chrono::steady_clock::now();
  qlat::Report report;
  try {
    report = qlat::run(o.cfg);
  } catch (const qlattice::InvalidInput& e) {
    std::cerr << "qlat: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qlat: " << e.what() << '\n';
    return 3;
  }
  if (o.timing || format == qlat::Format::text) {
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  const std::string text = qlat::render(report, format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "qlat: cannot write " << o.out << '\n';
      return 2;
    }
    f << text;
  }
  return report.all_passed() ? 0 : 1;
}
