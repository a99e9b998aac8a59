#pragma once
// qlat subcommands. Each returns a Report; the process exit status is 0 iff
// every check in it passed.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "qlat/report.hpp"
#include "qlattice/tolerances.hpp"

namespace qlat {

struct RunConfig {
  std::string command;
  int dim_a = 3;
  int dim_b = 3;
  int trials = 200;
  std::uint64_t seed = 42;
  qlattice::Tolerances tol;
  int threads = 1;
  int trace_a = 1;
  int trace_b = 1;
  std::string spec_path;

  /// Throws qlattice::InvalidInput on out-of-range values.
  void validate() const;
  /// Everything that influences the payload. Thread count is deliberately absent.
  json echo() const;
};

Report cmd_reproduce_chsh(const RunConfig& cfg);
Report cmd_reproduce_measurement(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);
Report cmd_search_violations(const RunConfig& cfg);
Report cmd_povm_demo(const RunConfig& cfg);
Report cmd_measure(const RunConfig& cfg);

/// Dispatch on cfg.command.
Report run(const RunConfig& cfg);

/// fn(0), ..., fn(n - 1) on up to `threads` workers; results in index order.
/// The first exception by index is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(int n, int threads, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int k = std::max(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace qlat
