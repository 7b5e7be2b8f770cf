#include "cacti/transform3d.hpp"

namespace cacti {

namespace {

// DCT along t applied as whole-plane accumulations: output plane f is
// sum_k A(f,k) * input plane k, keeping the inner loop contiguous.
void dct_planes(const Dct& dct, const VideoCube& in, VideoCube& out, bool inverse) {
  const std::size_t fs = in.frame_size();
  const int n_t = in.n_t();
  for (int f = 0; f < n_t; ++f) {
    double* dst = out.frame(f);
    for (std::size_t i = 0; i < fs; ++i) dst[i] = 0.0;
    for (int k = 0; k < n_t; ++k) {
      const double c = inverse ? dct.coeff(k, f) : dct.coeff(f, k);
      if (c == 0.0) continue;
      const double* src = in.frame(k);
      for (std::size_t i = 0; i < fs; ++i) dst[i] += c * src[i];
    }
  }
}

}  // namespace

Transform3::Transform3(int n_x, int n_y, int n_t, WaveletSpec wavelet)
    : n_x_(n_x), n_y_(n_y), n_t_(n_t), wavelet_(wavelet), dct_(n_t) {
  if (wavelet.levels < 1) throw ConfigError("Transform3: levels must be >= 1");
  const int f = 1 << wavelet.levels;
  if (n_x % f != 0 || n_y % f != 0)
    throw DimensionError("Transform3: spatial dims must be divisible by 2^levels");
}

void Transform3::check_shape(const VideoCube& v) const {
  if (v.n_x() != n_x_ || v.n_y() != n_y_ || v.n_t() != n_t_)
    throw DimensionError("Transform3: cube shape mismatch");
}

CoefCube Transform3::analyze(const VideoCube& x) const {
  check_shape(x);
  VideoCube tmp = x;
  for (int k = 0; k < n_t_; ++k) {
    dwt2_forward(tmp.frame(k), n_x_, n_y_, n_x_, wavelet_.levels);
  }
  CoefCube w(n_x_, n_y_, n_t_);
  dct_planes(dct_, tmp, w, /*inverse=*/false);
  return w;
}

VideoCube Transform3::synthesize(const CoefCube& w) const {
  check_shape(w);
  VideoCube x(n_x_, n_y_, n_t_);
  dct_planes(dct_, w, x, /*inverse=*/true);
  for (int k = 0; k < n_t_; ++k) {
    dwt2_inverse(x.frame(k), n_x_, n_y_, n_x_, wavelet_.levels);
  }
  return x;
}

}  // namespace cacti
