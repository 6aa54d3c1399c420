#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cftherm {

// Execution policy for the data-parallel kernels.  The parallel path uses a
// fixed block decomposition so that results do not depend on the number of
// threads or the schedule; the serial path is kept as a reference for tests
// and benchmarks.
enum class Exec { serial, par };

namespace detail {
constexpr std::size_t kSumBlocks = 64;
}

// Deterministic reduction: the range is split into kSumBlocks contiguous
// blocks, each block is summed left-to-right, block sums are combined in
// block order.  Identical output for any thread count.
template <class T, class Fn>
T blocked_sum(std::size_t n, Fn&& term, Exec exec = Exec::par) {
  if (exec == Exec::serial || n < 2 * detail::kSumBlocks) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  const std::size_t nb = detail::kSumBlocks;
  std::vector<T> partial(nb, T{});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long b = 0; b < static_cast<long long>(nb); ++b) {
    const std::size_t lo = n * static_cast<std::size_t>(b) / nb;
    const std::size_t hi = n * (static_cast<std::size_t>(b) + 1) / nb;
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  T acc{};
  for (std::size_t b = 0; b < nb; ++b) acc += partial[b];
  return acc;
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& body, Exec exec = Exec::par) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
}

// Max-reduction is order independent, so a plain OpenMP reduction is fine.
template <class Fn>
double max_reduce(std::size_t n, Fn&& value, Exec exec = Exec::par) {
  double m = 0.0;
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, value(i));
    return m;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : m)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    m = std::max(m, value(static_cast<std::size_t>(i)));
  return m;
}

}  // namespace cftherm
