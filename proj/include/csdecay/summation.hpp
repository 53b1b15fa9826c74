#pragma once

#include <complex>

namespace csdecay {

// Kahan-compensated accumulator. Summation order is fixed by the caller,
// so reductions built on this are bit-reproducible.
template <typename T>
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(T init) : sum_(init) {}

  KahanSum& operator+=(T value) {
    const T y = value - carry_;
    const T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
    return *this;
  }

  T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

// Complex Kahan accumulator, compensating real and imaginary parts separately.
template <typename T>
class KahanComplexSum {
 public:
  KahanComplexSum& operator+=(std::complex<T> z) {
    re_ += z.real();
    im_ += z.imag();
    return *this;
  }

  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum<T> re_;
  KahanSum<T> im_;
};

}  // namespace csdecay
