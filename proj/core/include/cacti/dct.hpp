#pragma once

#include <vector>

#include "cacti/errors.hpp"

namespace cacti {

// Orthonormal type-II DCT of length n. The analysis matrix A satisfies
// A A^T = I exactly in exact arithmetic for any n, so the time axis of the
// 3D basis is orthonormal regardless of n_t.
class Dct {
 public:
  explicit Dct(int n);

  int size() const { return n_; }

  // out = A in (analysis) / out = A^T in (synthesis), stride-1 vectors.
  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;

  // Analysis matrix entry A(f, n).
  double coeff(int f, int i) const { return a_[std::size_t(f) * n_ + i]; }

 private:
  int n_;
  std::vector<double> a_;  // row-major analysis matrix
};

}  // namespace cacti
