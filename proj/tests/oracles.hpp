#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths: dense matrices built from first principles, scalar
// loops, exhaustive searches.

#include <cmath>
#include <cstdint>
#include <vector>

#include "cacti/coding.hpp"
#include "cacti/rng.hpp"
#include "cacti/tensor.hpp"
#include "cacti/wavelet.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix identity(int n) {
  Matrix m(size_t(n), std::vector<double>(size_t(n), 0.0));
  for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = 1.0;
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const size_t rows = a.size(), inner = b.size(), cols = b[0].size();
  Matrix c(rows, std::vector<double>(cols, 0.0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      const double v = a[i][k];
      if (v == 0.0) continue;
      for (size_t j = 0; j < cols; ++j) c[i][j] += v * b[k][j];
    }
  return c;
}

inline std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a[0].size(), std::vector<double>(a.size(), 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// A removing-one-level periodized DWT matrix of size n x n built row by row
// from the raw filter taps: row r of the lowpass half is h shifted by 2r
// (mod n), the highpass half uses g[i] = (-1)^i h[15-i].
inline Matrix dwt_level_matrix(int n) {
  Matrix m(size_t(n), std::vector<double>(size_t(n), 0.0));
  for (int r = 0; r < n / 2; ++r) {
    for (int i = 0; i < 16; ++i) {
      const int col = (2 * r + i) % n;
      m[size_t(r)][size_t(col)] += cacti::kDb8[size_t(i)];
      const double g = ((i % 2 == 0) ? 1.0 : -1.0) * cacti::kDb8[size_t(15 - i)];
      m[size_t(n / 2 + r)][size_t(col)] += g;
    }
  }
  return m;
}

// Full L-level 1D analysis matrix: cascade of level matrices acting on the
// leading sub-block.
inline Matrix dwt_analysis_matrix(int n, int levels) {
  Matrix acc = identity(n);
  int len = n;
  for (int l = 0; l < levels; ++l) {
    Matrix step = identity(n);
    const Matrix one = dwt_level_matrix(len);
    for (int i = 0; i < len; ++i)
      for (int j = 0; j < len; ++j) step[size_t(i)][size_t(j)] = one[size_t(i)][size_t(j)];
    acc = matmul(step, acc);
    len /= 2;
  }
  return acc;
}

// Orthonormal DCT-II analysis matrix from the defining cosine formula.
inline Matrix dct_analysis_matrix(int n) {
  Matrix m(size_t(n), std::vector<double>(size_t(n), 0.0));
  const double pi = 3.14159265358979323846;
  for (int f = 0; f < n; ++f) {
    const double s = f == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i)
      m[size_t(f)][size_t(i)] = s * std::cos(pi * (2 * i + 1) * f / (2.0 * n));
  }
  return m;
}

// kron(A, B) with B acting on the faster axis.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Matrix k(ar * br, std::vector<double>(ac * bc, 0.0));
  for (size_t i = 0; i < ar; ++i)
    for (size_t j = 0; j < ac; ++j) {
      if (a[i][j] == 0.0) continue;
      for (size_t p = 0; p < br; ++p)
        for (size_t q = 0; q < bc; ++q) k[i * br + p][j * bc + q] = a[i][j] * b[p][q];
    }
  return k;
}

// Dense analysis matrix of the 3D basis: kron(DCT_t, kron(W_y, W_x)), x
// fastest, matching vec(X_1);...;vec(X_nt).
inline Matrix dense_analysis_3d(int n_x, int n_y, int n_t, int levels) {
  return kron(dct_analysis_matrix(n_t),
              kron(dwt_analysis_matrix(n_y, levels), dwt_analysis_matrix(n_x, levels)));
}

// Dense sensing matrix Psi = [diag(vec(H_1)), ..., diag(vec(H_nt))].
inline Matrix dense_psi(const cacti::MaskSchedule& s) {
  const size_t pixels = size_t(s.n_x()) * size_t(s.n_y());
  Matrix psi(pixels, std::vector<double>(pixels * size_t(s.n_t()), 0.0));
  for (int k = 0; k < s.n_t(); ++k)
    for (size_t i = 0; i < pixels; ++i) psi[i][size_t(k) * pixels + i] = s.planes[size_t(k)][i];
  return psi;
}

inline std::vector<double> flat(const cacti::VideoCube& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline std::vector<double> flat(const cacti::Image2D& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline cacti::VideoCube cube_from_flat(const std::vector<double>& x, int n_x, int n_y, int n_t) {
  cacti::VideoCube v(n_x, n_y, n_t);
  for (size_t i = 0; i < x.size(); ++i) v[i] = x[i];
  return v;
}

inline cacti::VideoCube random_cube(int n_x, int n_y, int n_t, std::uint64_t seed) {
  cacti::Rng rng(seed);
  cacti::VideoCube v(n_x, n_y, n_t);
  for (size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform01() * 2.0 - 1.0;
  return v;
}

inline cacti::Image2D random_image(int n_x, int n_y, std::uint64_t seed) {
  cacti::Rng rng(seed);
  cacti::Image2D v(n_x, n_y);
  for (size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform01() * 2.0 - 1.0;
  return v;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Minimizer of (s-1)^2 ||w||^2 + 2 lambda beta s ||w|| over s >= 0 by golden
// section on [0, 1] ( convex in s); returns the optimal scale factor.
inline double prox_scale_search(double norm, double lambda, double beta) {
  if (norm == 0.0) return 0.0;
  const auto f = [&](double s) {
    return (s - 1.0) * (s - 1.0) * norm * norm + 2.0 * lambda * beta * s * norm;
  };
  double lo = 0.0, hi = 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
