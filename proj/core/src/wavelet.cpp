#include "cacti/wavelet.hpp"

#include <cstring>
#include <vector>

namespace cacti {

namespace {

constexpr int kTaps = 16;

// Quadrature mirror highpass: g[i] = (-1)^i h[15-i].
constexpr std::array<double, kTaps> make_highpass() {
  std::array<double, kTaps> g{};
  for (int i = 0; i < kTaps; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    g[i] = sign * kDb8[kTaps - 1 - i];
  }
  return g;
}

constexpr std::array<double, kTaps> kDb8Hi = make_highpass();

// One analysis level along x for the leading n_x_sub x n_y_sub block.
// Lines along x are contiguous.
void analyze_x(double* blk, int n_x_sub, int n_y_sub, int pitch, double* scratch) {
  const int half = n_x_sub / 2;
  for (int iy = 0; iy < n_y_sub; ++iy) {
    double* line = blk + std::size_t(iy) * pitch;
    for (int r = 0; r < half; ++r) {
      double a = 0.0, d = 0.0;
      for (int i = 0; i < kTaps; ++i) {
        const double v = line[(2 * r + i) % n_x_sub];
        a += kDb8[i] * v;
        d += kDb8Hi[i] * v;
      }
      scratch[r] = a;
      scratch[half + r] = d;
    }
    std::memcpy(line, scratch, std::size_t(n_x_sub) * sizeof(double));
  }
}

void synthesize_x(double* blk, int n_x_sub, int n_y_sub, int pitch, double* scratch) {
  const int half = n_x_sub / 2;
  for (int iy = 0; iy < n_y_sub; ++iy) {
    double* line = blk + std::size_t(iy) * pitch;
    std::memset(scratch, 0, std::size_t(n_x_sub) * sizeof(double));
    for (int r = 0; r < half; ++r) {
      const double a = line[r];
      const double d = line[half + r];
      for (int i = 0; i < kTaps; ++i) {
        scratch[(2 * r + i) % n_x_sub] += kDb8[i] * a + kDb8Hi[i] * d;
      }
    }
    std::memcpy(line, scratch, std::size_t(n_x_sub) * sizeof(double));
  }
}

// One analysis level along y; accumulates whole x rows so the inner loop is
// contiguous. `scratch` holds n_x_sub * n_y_sub doubles.
void analyze_y(double* blk, int n_x_sub, int n_y_sub, int pitch, double* scratch) {
  const int half = n_y_sub / 2;
  std::memset(scratch, 0, std::size_t(n_x_sub) * n_y_sub * sizeof(double));
  for (int r = 0; r < half; ++r) {
    double* arow = scratch + std::size_t(r) * n_x_sub;
    double* drow = scratch + std::size_t(half + r) * n_x_sub;
    for (int i = 0; i < kTaps; ++i) {
      const double* src = blk + std::size_t((2 * r + i) % n_y_sub) * pitch;
      const double h = kDb8[i];
      const double g = kDb8Hi[i];
      for (int x = 0; x < n_x_sub; ++x) {
        arow[x] += h * src[x];
        drow[x] += g * src[x];
      }
    }
  }
  for (int iy = 0; iy < n_y_sub; ++iy) {
    std::memcpy(blk + std::size_t(iy) * pitch, scratch + std::size_t(iy) * n_x_sub,
                std::size_t(n_x_sub) * sizeof(double));
  }
}

void synthesize_y(double* blk, int n_x_sub, int n_y_sub, int pitch, double* scratch) {
  const int half = n_y_sub / 2;
  std::memset(scratch, 0, std::size_t(n_x_sub) * n_y_sub * sizeof(double));
  for (int r = 0; r < half; ++r) {
    const double* arow = blk + std::size_t(r) * pitch;
    const double* drow = blk + std::size_t(half + r) * pitch;
    for (int i = 0; i < kTaps; ++i) {
      double* dst = scratch + std::size_t((2 * r + i) % n_y_sub) * n_x_sub;
      const double h = kDb8[i];
      const double g = kDb8Hi[i];
      for (int x = 0; x < n_x_sub; ++x) {
        dst[x] += h * arow[x] + g * drow[x];
      }
    }
  }
  for (int iy = 0; iy < n_y_sub; ++iy) {
    std::memcpy(blk + std::size_t(iy) * pitch, scratch + std::size_t(iy) * n_x_sub,
                std::size_t(n_x_sub) * sizeof(double));
  }
}

void check_dims(int n_x, int n_y, int levels) {
  if (levels < 1) throw ConfigError("dwt2: levels must be >= 1");
  const int f = 1 << levels;
  if (n_x % f != 0 || n_y % f != 0)
    throw DimensionError("dwt2: dims must be divisible by 2^levels");
}

}  // namespace

void dwt2_forward(double* frame, int n_x, int n_y, int pitch, int levels) {
  check_dims(n_x, n_y, levels);
  std::vector<double> scratch(std::size_t(n_x) * n_y);
  for (int l = 0; l < levels; ++l) {
    const int nx = n_x >> l;
    const int ny = n_y >> l;
    analyze_x(frame, nx, ny, pitch, scratch.data());
    analyze_y(frame, nx, ny, pitch, scratch.data());
  }
}

void dwt2_inverse(double* frame, int n_x, int n_y, int pitch, int levels) {
  check_dims(n_x, n_y, levels);
  std::vector<double> scratch(std::size_t(n_x) * n_y);
  for (int l = levels - 1; l >= 0; --l) {
    const int nx = n_x >> l;
    const int ny = n_y >> l;
    synthesize_y(frame, nx, ny, pitch, scratch.data());
    synthesize_x(frame, nx, ny, pitch, scratch.data());
  }
}

int subband_level(int ix, int iy, const WaveletSpec& spec, int n_x, int n_y) {
  if (ix < 0 || ix >= n_x || iy < 0 || iy >= n_y)
    throw ConfigError("subband_level: index out of range");
  const auto axis_level = [&](int i, int n) {
    if (i < (n >> spec.levels)) return 0;
    for (int l = 1; l <= spec.levels; ++l) {
      if (i < (n >> (spec.levels - l))) return l;
    }
    return spec.levels;  // unreachable for i < n
  };
  return std::max(axis_level(ix, n_x), axis_level(iy, n_y));
}

}  // namespace cacti
