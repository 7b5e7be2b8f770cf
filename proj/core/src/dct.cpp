#include "cacti/dct.hpp"

#include <cmath>
#include <numbers>

namespace cacti {

Dct::Dct(int n) : n_(n) {
  if (n < 1) throw ConfigError("Dct: length must be >= 1");
  a_.resize(std::size_t(n) * n);
  const double c0 = std::sqrt(1.0 / n);
  const double cf = std::sqrt(2.0 / n);
  for (int f = 0; f < n; ++f) {
    const double scale = (f == 0) ? c0 : cf;
    for (int i = 0; i < n; ++i) {
      a_[std::size_t(f) * n + i] =
          scale * std::cos(std::numbers::pi * (2 * i + 1) * f / (2.0 * n));
    }
  }
}

void Dct::forward(const double* in, double* out) const {
  for (int f = 0; f < n_; ++f) {
    double acc = 0.0;
    const double* row = a_.data() + std::size_t(f) * n_;
    for (int i = 0; i < n_; ++i) acc += row[i] * in[i];
    out[f] = acc;
  }
}

void Dct::inverse(const double* in, double* out) const {
  for (int i = 0; i < n_; ++i) out[i] = 0.0;
  for (int f = 0; f < n_; ++f) {
    const double* row = a_.data() + std::size_t(f) * n_;
    const double v = in[f];
    for (int i = 0; i < n_; ++i) out[i] += row[i] * v;
  }
}

}  // namespace cacti
