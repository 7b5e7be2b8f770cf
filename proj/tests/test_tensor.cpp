#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cacti/tensor.hpp"
#include "oracles.hpp"

using namespace cacti;

TEST_CASE("hadamard identity and zero") {
  VideoCube x = oracle::random_cube(4, 4, 3, 11);
  VideoCube ones(4, 4, 3, 1.0);
  VideoCube zeros(4, 4, 3, 0.0);
  CHECK(hadamard(ones, x).values()[5] == x[5]);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(hadamard(ones, x)[i] == x[i]);
    CHECK(hadamard(x, zeros)[i] == 0.0);
  }
}

TEST_CASE("hadamard 2x2 direct arithmetic") {
  Image2D a(2, 2), b(2, 2);
  a.at(0, 0) = 1; a.at(1, 0) = 2; a.at(0, 1) = 3; a.at(1, 1) = 4;
  b.at(0, 0) = 5; b.at(1, 0) = 6; b.at(0, 1) = 7; b.at(1, 1) = 8;
  Image2D c = hadamard(a, b);
  CHECK(c.at(0, 0) == 5);
  CHECK(c.at(1, 0) == 12);
  CHECK(c.at(0, 1) == 21);
  CHECK(c.at(1, 1) == 32);
}

TEST_CASE("hadamard commutes and matches scalar loop") {
  VideoCube a = oracle::random_cube(5, 7, 4, 21);
  VideoCube b = oracle::random_cube(5, 7, 4, 22);
  VideoCube ab = hadamard(a, b);
  VideoCube ba = hadamard(b, a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(ab[i] == a[i] * b[i]);
    CHECK(ab[i] == ba[i]);
  }
}

TEST_CASE("hadamard rejects shape mismatch") {
  CHECK_THROWS_AS(hadamard(Image2D(2, 3), Image2D(3, 2)), DimensionError);
  CHECK_THROWS_AS(hadamard(VideoCube(2, 2, 2), VideoCube(2, 2, 3)), DimensionError);
}

TEST_CASE("sum_over_t basics") {
  VideoCube single = oracle::random_cube(6, 5, 1, 3);
  Image2D s1 = sum_over_t(single);
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == single[i]);

  VideoCube ones(3, 3, 8, 1.0);
  Image2D s8 = sum_over_t(ones);
  for (double v : s8.values()) CHECK(v == 8.0);
}

TEST_CASE("sum_over_t matches per-pixel scalar oracle") {
  VideoCube x = oracle::random_cube(9, 6, 5, 77);
  Image2D s = sum_over_t(x);
  for (int iy = 0; iy < 6; ++iy) {
    for (int ix = 0; ix < 9; ++ix) {
      double acc = 0.0;
      for (int k = 0; k < 5; ++k) acc += x.at(ix, iy, k);
      CHECK(s.at(ix, iy) == doctest::Approx(acc).epsilon(0.0));
    }
  }
}

TEST_CASE("psnr sentinel and exact values") {
  Image2D a(4, 4, 0.5);
  CHECK(std::isinf(psnr(a, a, 1.0)));

  Image2D b(4, 4, 0.6);  // uniform error 0.1 at peak 1 -> 20 dB
  CHECK(psnr(b, a, 1.0) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("psnr symmetric and matches mse oracle") {
  Image2D a = oracle::random_image(8, 8, 1);
  Image2D b = oracle::random_image(8, 8, 2);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  acc /= double(a.size());
  CHECK(psnr(a, b, 1.0) == doctest::Approx(10.0 * std::log10(1.0 / acc)).epsilon(1e-12));
  CHECK(psnr(a, b, 1.0) == psnr(b, a, 1.0));
  CHECK_THROWS_AS(psnr(a, Image2D(4, 4), 1.0), DimensionError);
  CHECK_THROWS_AS(psnr(a, b, 0.0), ConfigError);
}

TEST_CASE("cube memory order is x fastest then y then t") {
  VideoCube x(2, 3, 2);
  x.at(1, 2, 1) = 42.0;
  CHECK(x[std::size_t(1 + 2 * (2 + 3 * 1))] == 42.0);
  CHECK(x.frame(1)[1 + 2 * 2] == 42.0);
}

TEST_CASE("reflect_index folds into range") {
  CHECK(reflect_index(-1, 5) == 0);
  CHECK(reflect_index(-2, 5) == 1);
  CHECK(reflect_index(5, 5) == 4);
  CHECK(reflect_index(6, 5) == 3);
  CHECK(reflect_index(2, 5) == 2);
}
