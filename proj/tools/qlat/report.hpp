#pragma once
// Check records and the three output formats of a qlat run.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlattice/hilbert.hpp"

namespace qlat {

using json = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct Check {
  std::string name;
  bool passed = false;
  json observed;
  json expected;
  json tolerance;  ///< null when the check is exact
};

struct Report {
  std::string command;
  json config = json::object();
  std::vector<Check> checks;
  json data = json::object();
  std::optional<double> duration_seconds;

  bool all_passed() const;
  std::size_t failures() const;

  /// observed <= expected + tol
  void at_most(std::string name, double observed, double expected, double tol);
  /// observed >= expected - tol
  void at_least(std::string name, double observed, double expected, double tol);
  /// |observed - expected| <= tol
  void near(std::string name, double observed, double expected, double tol);
  void equal(std::string name, long long observed, long long expected);
  void truth(std::string name, bool observed, bool expected = true);
  void add(Check c) { checks.push_back(std::move(c)); }
};

json to_json(const qlattice::Complex& z);
json to_json(const qlattice::ComplexVector& v);
/// {rows, cols, entries} with entries row-major, each an [re, im] pair.
json to_json(const qlattice::ComplexMatrix& m);
json to_json(const std::vector<double>& v);

std::string render(const Report& r, Format f);
std::string render_json(const Report& r);
std::string render_csv(const Report& r);
std::string render_text(const Report& r);

}  // namespace qlat
