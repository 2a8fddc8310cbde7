#pragma once

// Deterministic data parallelism. Work is cut into chunks whose boundaries
// depend only on the problem size, never on the worker count, and partial
// results are combined in chunk order. Every result is therefore bit-for-bit
// independent of how many workers ran.

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <vector>

namespace pslab {

inline constexpr std::size_t kChunkSize = 512;

// Worker count used by all parallel operations. Initialized from the
// PSLAB_WORKERS environment variable, else the hardware concurrency.
int worker_count();
void set_worker_count(int workers);

// Runs body(chunk_index) for chunk_index in [0, chunks) on up to
// worker_count() threads. The first exception thrown (in chunk order) is
// rethrown on the calling thread after all workers finish.
void run_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline std::size_t chunk_count(std::size_t n) {
  return (n + kChunkSize - 1) / kChunkSize;
}

// out[i] = fn(i) for i in [0, n).
template <class T, class Fn>
std::vector<T> ordered_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  run_chunks(chunk_count(n), [&](std::size_t c) {
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(n, lo + kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
  });
  return out;
}

// Compensated sum of term(i) for i in [0, n), ascending within each chunk,
// chunks combined in ascending order. T is double or std::complex<double>.
template <class T, class Fn>
T ordered_sum(std::size_t n, Fn&& term) {
  using Acc = std::conditional_t<std::is_same_v<T, double>, CompensatedSum,
                                 ComplexCompensatedSum>;
  std::vector<T> partial(chunk_count(n));
  run_chunks(partial.size(), [&](std::size_t c) {
    Acc acc;
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(n, lo + kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[c] = acc.value();
  });
  Acc total;
  for (const T& p : partial) total.add(p);
  return total.value();
}

}  // namespace pslab
