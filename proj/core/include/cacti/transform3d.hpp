#pragma once

#include "cacti/dct.hpp"
#include "cacti/tensor.hpp"
#include "cacti/wavelet.hpp"

namespace cacti {

// Separable orthonormal 3D basis: per-frame 2D Daubechies-8 wavelet over
// (x, y) and orthonormal DCT along t. analyze applies the transpose of the
// synthesis basis, so synthesize(analyze(x)) == x up to roundoff.
class Transform3 {
 public:
  Transform3(int n_x, int n_y, int n_t, WaveletSpec wavelet);

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  int n_t() const { return n_t_; }
  const WaveletSpec& wavelet() const { return wavelet_; }
  const Dct& dct() const { return dct_; }

  CoefCube analyze(const VideoCube& x) const;
  VideoCube synthesize(const CoefCube& w) const;

 private:
  void check_shape(const VideoCube& v) const;

  int n_x_;
  int n_y_;
  int n_t_;
  WaveletSpec wavelet_;
  Dct dct_;
};

}  // namespace cacti
