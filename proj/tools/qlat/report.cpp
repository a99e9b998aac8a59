#include "qlat/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qlat {

bool Report::all_passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

void Report::at_most(std::string name, double observed, double expected, double tol) {
  const bool ok = std::isfinite(observed) && observed <= expected + tol;
  checks.push_back({std::move(name), ok, observed, expected, tol});
}

void Report::at_least(std::string name, double observed, double expected, double tol) {
  const bool ok = std::isfinite(observed) && observed >= expected - tol;
  checks.push_back({std::move(name), ok, observed, expected, tol});
}

void Report::near(std::string name, double observed, double expected, double tol) {
  const bool ok = std::isfinite(observed) && std::abs(observed - expected) <= tol;
  checks.push_back({std::move(name), ok, observed, expected, tol});
}

void Report::equal(std::string name, long long observed, long long expected) {
  checks.push_back({std::move(name), observed == expected, observed, expected, nullptr});
}

void Report::truth(std::string name, bool observed, bool expected) {
  checks.push_back({std::move(name), observed == expected, observed, expected, nullptr});
}

json to_json(const qlattice::Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const qlattice::ComplexVector& v) {
  json out = json::array();
  for (qlattice::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const qlattice::ComplexMatrix& m) {
  json entries = json::array();
  for (qlattice::Index i = 0; i < m.rows(); ++i) {
    for (qlattice::Index j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const std::vector<double>& v) { return json(v); }

std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::csv:
      return render_csv(r);
    case Format::text:
      return render_text(r);
    case Format::json:
      break;
  }
  return render_json(r);
}

std::string render_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"status", c.passed ? "pass" : "fail"},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance}});
  }
  json doc = {{"schema_version", 1},
              {"command", r.command},
              {"config", r.config},
              {"checks", std::move(checks)},
              {"summary",
               {{"total", r.checks.size()},
                {"passed", r.checks.size() - r.failures()},
                {"failed", r.failures()}}},
              {"data", r.data}};
  if (r.duration_seconds) doc["duration_seconds"] = *r.duration_seconds;
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "name,status,observed,expected,tolerance\n";
  for (const auto& c : r.checks) {
    out << csv_field(c.name) << ',' << (c.passed ? "pass" : "fail") << ','
        << csv_field(scalar(c.observed)) << ',' << csv_field(scalar(c.expected)) << ','
        << csv_field(c.tolerance.is_null() ? "" : scalar(c.tolerance)) << '\n';
  }
  return out.str();
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << '\n';
  for (const auto& c : r.checks) {
    out << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << "  observed=" << scalar(c.observed)
        << " expected=" << scalar(c.expected);
    if (!c.tolerance.is_null()) out << " tol=" << scalar(c.tolerance);
    out << '\n';
  }
  out << r.checks.size() - r.failures() << '/' << r.checks.size() << " checks passed";
  if (r.duration_seconds) {
    out << " in " << std::fixed << std::setprecision(3) << *r.duration_seconds << " s";
  }
  out << '\n';
  return out.str();
}

}  // namespace qlat
