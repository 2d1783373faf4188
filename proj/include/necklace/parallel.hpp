#pragma once

#include <cstddef>
#include <cmath>
#include <complex>
#include <functional>

namespace necklace {

/// Worker count used by the library. Initialised from NECKLACE_THREADS when
/// set, otherwise 1.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker
/// and the work is split into contiguous blocks, so results written to slot i
/// never depend on the number of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Neumaier compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    T t = sum_ + value;
    if (magnitude(sum_) >= magnitude(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double magnitude(double v) { return v < 0 ? -v : v; }
  template <typename U>
  static double magnitude(const U& v) { return std::abs(v.real()) + std::abs(v.imag()); }

  T sum_{};
  T comp_{};
};

}  // namespace necklace
