#include "cacti/coding.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "cacti/image_io.hpp"
#include "cacti/rng.hpp"

namespace cacti {

MaskMode mask_mode_from_string(const std::string& s) {
  if (s == "shifted") return MaskMode::kShifted;
  if (s == "random-binary") return MaskMode::kRandomBinary;
  if (s == "random-gray") return MaskMode::kRandomGray;
  throw ConfigError("unknown mask mode: " + s);
}

std::string to_string(MaskMode m) {
  switch (m) {
    case MaskMode::kShifted: return "shifted";
    case MaskMode::kRandomBinary: return "random-binary";
    case MaskMode::kRandomGray: return "random-gray";
  }
  throw ConfigError("bad mask mode value");
}

MasterMask make_master_mask(int n_x, int n_y_wide, std::uint64_t seed, double p) {
  if (p <= 0.0 || p >= 1.0) throw ConfigError("mask density must be in (0,1)");
  MasterMask m{Image2D(n_x, n_y_wide), seed, p};
  Rng rng(seed);
  for (std::size_t i = 0; i < m.values.size(); ++i)
    m.values[i] = rng.bernoulli(p) ? 1.0 : 0.0;
  return m;
}

MaskSchedule make_schedule(int n_x, int n_y, int n_t, MaskMode mode, std::uint64_t seed,
                           double p) {
  if (n_t < 1) throw ConfigError("make_schedule: n_t must be >= 1");
  MaskSchedule s;
  s.mode = mode;
  s.planes.reserve(std::size_t(n_t));
  switch (mode) {
    case MaskMode::kShifted: {
      // One master mask wide enough that no window wraps; plane k is the
      // window starting at column k-1 (one-pixel horizontal translation per
      // sub-frame).
      const MasterMask master = make_master_mask(n_x, n_y + n_t - 1, seed, p);
      for (int k = 0; k < n_t; ++k) {
        Image2D plane(n_x, n_y);
        for (int iy = 0; iy < n_y; ++iy)
          for (int ix = 0; ix < n_x; ++ix) plane.at(ix, iy) = master.values.at(ix, iy + k);
        s.planes.push_back(std::move(plane));
      }
      break;
    }
    case MaskMode::kRandomBinary: {
      Rng rng(seed);
      for (int k = 0; k < n_t; ++k) {
        Image2D plane(n_x, n_y);
        for (std::size_t i = 0; i < plane.size(); ++i)
          plane[i] = rng.bernoulli(p) ? 1.0 : 0.0;
        s.planes.push_back(std::move(plane));
      }
      break;
    }
    case MaskMode::kRandomGray: {
      Rng rng(seed);
      for (int k = 0; k < n_t; ++k) {
        Image2D plane(n_x, n_y);
        for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = rng.uniform01();
        s.planes.push_back(std::move(plane));
      }
      break;
    }
  }
  return s;
}

namespace {

void check_cube_schedule(const VideoCube& x, const MaskSchedule& s) {
  if (x.n_x() != s.n_x() || x.n_y() != s.n_y() || x.n_t() != s.n_t())
    throw DimensionError("cube/schedule shape mismatch");
}

}  // namespace

Image2D forward_image(const VideoCube& x, const MaskSchedule& s) {
  check_cube_schedule(x, s);
  Image2D y(x.n_x(), x.n_y());
  const std::size_t fs = x.frame_size();
  for (int k = 0; k < x.n_t(); ++k) {
    const double* xf = x.frame(k);
    const Image2D& h = s.planes[std::size_t(k)];
    for (std::size_t i = 0; i < fs; ++i) y[i] += xf[i] * h[i];
  }
  return y;
}

CodedSnapshot forward(const VideoCube& x, const MaskSchedule& s, double noise_sigma,
                      std::uint64_t noise_seed) {
  if (noise_sigma < 0.0) throw ConfigError("forward: noise sigma must be >= 0");
  CodedSnapshot snap{forward_image(x, s), s, noise_sigma};
  if (noise_sigma > 0.0) {
    Rng rng(noise_seed);
    for (std::size_t i = 0; i < snap.y.size(); ++i) snap.y[i] += noise_sigma * rng.gaussian();
  }
  return snap;
}

VideoCube adjoint(const Image2D& y, const MaskSchedule& s) {
  if (y.n_x() != s.n_x() || y.n_y() != s.n_y())
    throw DimensionError("adjoint: image/schedule shape mismatch");
  VideoCube x(s.n_x(), s.n_y(), s.n_t());
  const std::size_t fs = x.frame_size();
  for (int k = 0; k < x.n_t(); ++k) {
    double* xf = x.frame(k);
    const Image2D& h = s.planes[std::size_t(k)];
    for (std::size_t i = 0; i < fs; ++i) xf[i] = y[i] * h[i];
  }
  return x;
}

Image2D gram_diagonal(const MaskSchedule& s) {
  Image2D d(s.n_x(), s.n_y());
  for (int k = 0; k < s.n_t(); ++k) {
    const Image2D& h = s.planes[std::size_t(k)];
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += h[i] * h[i];
  }
  return d;
}

namespace {

// Truncated normalized 2D Gaussian, radius ceil(3 sigma).
struct BlurKernel {
  int radius = 0;
  std::vector<double> weights;  // (2r+1)^2
};

BlurKernel make_kernel(double sigma) {
  BlurKernel k;
  k.radius = std::max(1, int(std::ceil(3.0 * sigma)));
  const int w = 2 * k.radius + 1;
  k.weights.resize(std::size_t(w) * w);
  double total = 0.0;
  for (int dy = -k.radius; dy <= k.radius; ++dy) {
    for (int dx = -k.radius; dx <= k.radius; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k.weights[std::size_t(dy + k.radius) * w + (dx + k.radius)] = v;
      total += v;
    }
  }
  for (double& v : k.weights) v /= total;
  return k;
}

}  // namespace

VideoCube focus_blur(const VideoCube& x_sharp, const Image2D& depth_map,
                     const std::vector<double>& focus_of_frame, double blur_gain) {
  if (blur_gain < 0.0) throw ConfigError("focus_blur: blur_gain must be >= 0");
  if (depth_map.n_x() != x_sharp.n_x() || depth_map.n_y() != x_sharp.n_y())
    throw DimensionError("focus_blur: depth map shape mismatch");
  if (int(focus_of_frame.size()) != x_sharp.n_t())
    throw DimensionError("focus_blur: focus list length must equal n_t");

  const int n_x = x_sharp.n_x();
  const int n_y = x_sharp.n_y();
  VideoCube out(n_x, n_y, x_sharp.n_t());
  std::unordered_map<long long, BlurKernel> cache;  // few distinct sigmas expected

  for (int k = 0; k < x_sharp.n_t(); ++k) {
    const double* src = x_sharp.frame(k);
    double* dst = out.frame(k);
    for (int iy = 0; iy < n_y; ++iy) {
      for (int ix = 0; ix < n_x; ++ix) {
        const double v = src[std::size_t(ix) + std::size_t(n_x) * iy];
        const double sigma = blur_gain * std::abs(depth_map.at(ix, iy) - focus_of_frame[std::size_t(k)]);
        if (sigma < 1e-12) {
          dst[std::size_t(ix) + std::size_t(n_x) * iy] += v;
          continue;
        }
        long long bits;
        static_assert(sizeof(bits) == sizeof(sigma));
        std::memcpy(&bits, &sigma, sizeof(bits));
        auto it = cache.find(bits);
        if (it == cache.end()) it = cache.emplace(bits, make_kernel(sigma)).first;
        const BlurKernel& ker = it->second;
        const int w = 2 * ker.radius + 1;
        for (int dy = -ker.radius; dy <= ker.radius; ++dy) {
          const int jy = reflect_index(iy + dy, n_y);
          const double* wrow = ker.weights.data() + std::size_t(dy + ker.radius) * w;
          for (int dx = -ker.radius; dx <= ker.radius; ++dx) {
            const int jx = reflect_index(ix + dx, n_x);
            dst[std::size_t(jx) + std::size_t(n_x) * jy] += v * wrow[dx + ker.radius];
          }
        }
      }
    }
  }
  return out;
}

void save_mask_plane(const Image2D& plane, const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    write_pgm(plane, path, 8);
  } else if (ext == ".csv") {
    write_csv_matrix(plane, path);
  } else {
    throw ConfigError("mask planes are saved as .pgm (binary) or .csv (gray): " + path);
  }
}

Image2D load_mask_plane(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".csv") return read_csv_matrix(path);
  throw DataError("mask planes load from .pgm or .csv: " + path);
}

}  // namespace cacti
