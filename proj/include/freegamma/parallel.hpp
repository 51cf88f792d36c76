#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace fg {

/// Every OpenMP kernel in the library takes one of these. The serial path is
/// the reference implementation; both paths produce bit-identical results
/// because work items are independent and reductions run in a fixed order.
enum class ExecutionPolicy { serial, parallel };

int thread_count();
void set_thread_count(int n);

/// Evaluates f(i) for i in [0, n) and returns the results in index order.
/// Under the parallel policy an exception thrown by f is carried out of the
/// parallel region; when several items throw, the one with the lowest index
/// is rethrown, matching the serial path.
template <class F>
auto map_indices(ExecutionPolicy policy, std::size_t n, F&& f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  if (policy == ExecutionPolicy::parallel) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        out[i] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

/// Pairwise (tree) summation with a fixed association order.
double pairwise_sum(std::span<const double> values);

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(std::span<const double>(values.data(), values.size()));
}

}  // namespace fg
