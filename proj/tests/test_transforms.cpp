#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cacti/dct.hpp"
#include "cacti/transform3d.hpp"
#include "cacti/wavelet.hpp"
#include "oracles.hpp"

using namespace cacti;

TEST_CASE("db8 filter is orthonormal") {
  double sum = 0.0, sum2 = 0.0;
  for (double h : kDb8) {
    sum += h;
    sum2 += h * h;
  }
  CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sum2 == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k < 8; ++k) {
    double acc = 0.0;
    for (int i = 0; i + 2 * k < 16; ++i) acc += kDb8[std::size_t(i)] * kDb8[std::size_t(i + 2 * k)];
    CHECK(std::abs(acc) < 1e-15);
  }
}

TEST_CASE("dense 1D DWT matrix is orthonormal (wrap-around lengths included)") {
  for (int n : {8, 16, 32}) {
    const auto w = oracle::dwt_analysis_matrix(n, 2);
    const auto wwt = oracle::matmul(w, oracle::transpose(w));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(wwt[std::size_t(i)][std::size_t(j)] - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("dct matrix orthonormal for awkward lengths") {
  for (int n : {1, 4, 8, 22}) {
    Dct dct(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += dct.coeff(i, k) * dct.coeff(j, k);
        CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("analyze of zero and constant cubes") {
  const int n = 16, nt = 4, L = 2;
  Transform3 basis(n, n, nt, WaveletSpec{L});

  CoefCube wz = basis.analyze(VideoCube(n, n, nt, 0.0));
  for (double v : wz.values()) CHECK(v == 0.0);

  const double c = 0.7;
  CoefCube wc = basis.analyze(VideoCube(n, n, nt, c));
  // energy conserved and confined to (approx-x, approx-y, DC-t)
  CHECK(norm_l2(wc) == doctest::Approx(c * std::sqrt(double(n * n * nt))).epsilon(1e-12));
  const int approx = n >> L;
  for (int k = 0; k < nt; ++k)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        if (k != 0 || ix >= approx || iy >= approx) CHECK(std::abs(wc.at(ix, iy, k)) < 1e-12);
}

TEST_CASE("full decomposition maps constant to a single coefficient") {
  const int n = 8, nt = 2;
  Transform3 basis(n, n, nt, WaveletSpec{3});  // approx band is 1x1
  const double c = 1.25;
  CoefCube w = basis.analyze(VideoCube(n, n, nt, c));
  CHECK(w.at(0, 0, 0) == doctest::Approx(c * std::sqrt(double(n * n * nt))).epsilon(1e-12));
  double off = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) off = std::max(off, std::abs(w[i]));
  CHECK(off < 1e-12);
}

TEST_CASE("round trip, Parseval, adjoint, linearity") {
  const int n = 32, nt = 5;
  Transform3 basis(n, n, nt, WaveletSpec{3});
  VideoCube x = oracle::random_cube(n, n, nt, 5);
  VideoCube y = oracle::random_cube(n, n, nt, 6);

  CoefCube w = basis.analyze(x);
  VideoCube back = basis.synthesize(w);
  double rel = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) rel = std::max(rel, std::abs(back[i] - x[i]));
  CHECK(rel / norm_linf(x) < 1e-10);

  CHECK(norm_l2(w) == doctest::Approx(norm_l2(x)).epsilon(1e-10));

  // <analyze(x), w2> == <x, synthesize(w2)>
  CoefCube w2 = oracle::random_cube(n, n, nt, 7);
  CHECK(dot(w, w2) == doctest::Approx(dot(x, basis.synthesize(w2))).epsilon(1e-10));

  // linearity
  const double a = 1.3, b = -0.4;
  VideoCube mix(n, n, nt);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * x[i] + b * y[i];
  CoefCube wmix = basis.analyze(mix);
  CoefCube wy = basis.analyze(y);
  for (std::size_t i = 0; i < wmix.size(); ++i)
    CHECK(wmix[i] == doctest::Approx(a * w[i] + b * wy[i]).epsilon(1e-10));
}

TEST_CASE("unit impulse coefficient gives a unit-norm atom") {
  const int n = 16, nt = 4;
  Transform3 basis(n, n, nt, WaveletSpec{2});
  CoefCube w(n, n, nt, 0.0);
  w.at(9, 3, 2) = 1.0;
  VideoCube atom = basis.synthesize(w);
  CHECK(norm_l2(atom) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense Kronecker oracle at 8x8x4 and 16x16x4") {
  for (int n : {8, 16}) {
    const int nt = 4, L = 2;
    Transform3 basis(n, n, nt, WaveletSpec{L});
    const auto dense = oracle::dense_analysis_3d(n, n, nt, L);
    VideoCube x = oracle::random_cube(n, n, nt, 40 + n);

    const auto w_dense = oracle::matvec(dense, oracle::flat(x));
    const CoefCube w = basis.analyze(x);
    CHECK(oracle::max_abs_diff(w_dense, oracle::flat(w)) < 1e-9);

    // synthesis is the transpose
    CoefCube wc = oracle::random_cube(n, n, nt, 50 + n);
    const auto x_dense = oracle::matvec(oracle::transpose(dense), oracle::flat(wc));
    const VideoCube xs = basis.synthesize(wc);
    CHECK(oracle::max_abs_diff(x_dense, oracle::flat(xs)) < 1e-9);
  }
}

TEST_CASE("subband_level geometry") {
  WaveletSpec spec{3};
  CHECK(subband_level(0, 0, spec, 256, 256) == 0);
  CHECK(subband_level(200, 10, spec, 256, 256) == 3);
  CHECK(subband_level(40, 10, spec, 256, 256) == 1);
  CHECK(subband_level(10, 100, spec, 256, 256) == 2);
  CHECK_THROWS_AS(subband_level(256, 0, spec, 256, 256), ConfigError);

  // exhaustive 16x16 map at L=2 vs hand-enumerated rectangles:
  // approx [0,4), level1 [4,8), level2 [8,16) per axis, combined by max.
  WaveletSpec s2{2};
  const auto axis = [](int i) { return i < 4 ? 0 : (i < 8 ? 1 : 2); };
  for (int iy = 0; iy < 16; ++iy)
    for (int ix = 0; ix < 16; ++ix)
      CHECK(subband_level(ix, iy, s2, 16, 16) == std::max(axis(ix), axis(iy)));
}

TEST_CASE("non-dyadic dims are rejected, not padded") {
  CHECK_THROWS_AS(Transform3(20, 16, 4, WaveletSpec{2}), DimensionError);
  CHECK_THROWS_AS(Transform3(16, 16, 4, WaveletSpec{5}), DimensionError);
  Transform3 ok(16, 16, 4, WaveletSpec{2});
  CHECK_THROWS_AS(ok.analyze(VideoCube(16, 16, 5)), DimensionError);
}
