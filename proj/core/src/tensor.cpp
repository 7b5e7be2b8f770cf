#include "cacti/tensor.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace cacti {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw DimensionError(msg);
}

double mse_flat(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / double(a.size());
}

double psnr_from_mse(double m, double peak) {
  if (peak <= 0.0) throw ConfigError("psnr: peak must be positive");
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / m);
}

double dot_flat(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

Image2D::Image2D(int n_x, int n_y, double fill) : n_x_(n_x), n_y_(n_y) {
  require(n_x > 0 && n_y > 0, "Image2D: dims must be positive");
  data_.assign(std::size_t(n_x) * std::size_t(n_y), fill);
}

VideoCube::VideoCube(int n_x, int n_y, int n_t, double fill)
    : n_x_(n_x), n_y_(n_y), n_t_(n_t) {
  require(n_x > 0 && n_y > 0 && n_t > 0, "VideoCube: dims must be positive");
  data_.assign(std::size_t(n_x) * std::size_t(n_y) * std::size_t(n_t), fill);
}

Image2D VideoCube::frame_image(int k) const {
  Image2D img(n_x_, n_y_);
  std::memcpy(img.data(), frame(k), frame_size() * sizeof(double));
  return img;
}

void VideoCube::set_frame(int k, const Image2D& img) {
  require(img.n_x() == n_x_ && img.n_y() == n_y_, "set_frame: shape mismatch");
  std::memcpy(frame(k), img.data(), frame_size() * sizeof(double));
}

Image2D hadamard(const Image2D& a, const Image2D& b) {
  require(a.same_shape(b), "hadamard: shape mismatch");
  Image2D out(a.n_x(), a.n_y());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

VideoCube hadamard(const VideoCube& a, const VideoCube& b) {
  require(a.same_shape(b), "hadamard: shape mismatch");
  VideoCube out(a.n_x(), a.n_y(), a.n_t());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Image2D sum_over_t(const VideoCube& x) {
  Image2D out(x.n_x(), x.n_y());
  const std::size_t fs = x.frame_size();
  for (int k = 0; k < x.n_t(); ++k) {
    const double* f = x.frame(k);
    for (std::size_t i = 0; i < fs; ++i) out[i] += f[i];
  }
  return out;
}

double mse(const Image2D& a, const Image2D& b) {
  require(a.same_shape(b), "mse: shape mismatch");
  return mse_flat(a.values(), b.values());
}

double mse(const VideoCube& a, const VideoCube& b) {
  require(a.same_shape(b), "mse: shape mismatch");
  return mse_flat(a.values(), b.values());
}

double psnr(const Image2D& est, const Image2D& ref, double peak) {
  return psnr_from_mse(mse(est, ref), peak);
}

double psnr(const VideoCube& est, const VideoCube& ref, double peak) {
  return psnr_from_mse(mse(est, ref), peak);
}

double dot(const Image2D& a, const Image2D& b) {
  require(a.same_shape(b), "dot: shape mismatch");
  return dot_flat(a.values(), b.values());
}

double dot(const VideoCube& a, const VideoCube& b) {
  require(a.same_shape(b), "dot: shape mismatch");
  return dot_flat(a.values(), b.values());
}

double norm_l2(const Image2D& a) { return std::sqrt(dot_flat(a.values(), a.values())); }
double norm_l2(const VideoCube& a) { return std::sqrt(dot_flat(a.values(), a.values())); }

double norm_linf(const Image2D& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

double norm_linf(const VideoCube& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Image2D& a) {
  for (double v : a.values())
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const VideoCube& a) {
  for (double v : a.values())
    if (!std::isfinite(v)) return false;
  return true;
}

int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace cacti
