#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cacti/errors.hpp"

namespace cacti {

// 2D real image, n_x by n_y, x index fastest in memory.
class Image2D {
 public:
  Image2D() = default;
  Image2D(int n_x, int n_y, double fill = 0.0);

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  std::size_t size() const { return data_.size(); }

  double& at(int ix, int iy) { return data_[idx(ix, iy)]; }
  double at(int ix, int iy) const { return data_[idx(ix, iy)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Image2D& o) const { return n_x_ == o.n_x_ && n_y_ == o.n_y_; }

 private:
  std::size_t idx(int ix, int iy) const {
    return std::size_t(ix) + std::size_t(n_x_) * std::size_t(iy);
  }
  int n_x_ = 0;
  int n_y_ = 0;
  std::vector<double> data_;
};

// n_x by n_y by n_t video tensor. Memory order: x fastest, then y, then t, so
// the flat vector is [vec(X_1); ...; vec(X_nt)] (frames concatenated in time).
class VideoCube {
 public:
  VideoCube() = default;
  VideoCube(int n_x, int n_y, int n_t, double fill = 0.0);

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  int n_t() const { return n_t_; }
  std::size_t size() const { return data_.size(); }
  std::size_t frame_size() const { return std::size_t(n_x_) * std::size_t(n_y_); }

  double& at(int ix, int iy, int k) { return data_[idx(ix, iy, k)]; }
  double at(int ix, int iy, int k) const { return data_[idx(ix, iy, k)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* frame(int k) { return data_.data() + frame_size() * std::size_t(k); }
  const double* frame(int k) const { return data_.data() + frame_size() * std::size_t(k); }
  Image2D frame_image(int k) const;
  void set_frame(int k, const Image2D& img);

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> values() const { return data_; }

  bool same_shape(const VideoCube& o) const {
    return n_x_ == o.n_x_ && n_y_ == o.n_y_ && n_t_ == o.n_t_;
  }

 private:
  std::size_t idx(int ix, int iy, int k) const {
    return std::size_t(ix) +
           std::size_t(n_x_) * (std::size_t(iy) + std::size_t(n_y_) * std::size_t(k));
  }
  int n_x_ = 0;
  int n_y_ = 0;
  int n_t_ = 0;
  std::vector<double> data_;
};

// Wavelet/DCT coefficients share the container; the shape is that of the video
// they represent.
using CoefCube = VideoCube;

Image2D hadamard(const Image2D& a, const Image2D& b);
VideoCube hadamard(const VideoCube& a, const VideoCube& b);

// Pixelwise sum over the time axis, accumulated in ascending k.
Image2D sum_over_t(const VideoCube& x);

double mse(const Image2D& a, const Image2D& b);
double mse(const VideoCube& a, const VideoCube& b);

// 10*log10(peak^2 / MSE); +infinity when MSE is exactly zero.
double psnr(const Image2D& est, const Image2D& ref, double peak = 1.0);
double psnr(const VideoCube& est, const VideoCube& ref, double peak = 1.0);

double dot(const Image2D& a, const Image2D& b);
double dot(const VideoCube& a, const VideoCube& b);
double norm_l2(const Image2D& a);
double norm_l2(const VideoCube& a);
double norm_linf(const Image2D& a);
double norm_linf(const VideoCube& a);

bool all_finite(const Image2D& a);
bool all_finite(const VideoCube& a);

// Half-sample reflection of i into [0, n).
int reflect_index(int i, int n);

}  // namespace cacti
