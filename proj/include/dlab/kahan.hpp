#pragma once

#include <complex>

namespace dlab {

// Compensated (Kahan) accumulator; works for double and std::complex<double>
// since the compensation is componentwise.
template <typename Value>
struct KahanAccumulator {
  Value sum{};
  Value compensation{};

  void add(Value value) {
    const Value y = value - compensation;
    const Value t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  KahanAccumulator& operator+=(Value value) {
    add(value);
    return *this;
  }

  Value value() const { return sum; }
};

using KahanReal = KahanAccumulator<double>;
using KahanComplex = KahanAccumulator<std::complex<double>>;

}  // namespace dlab
