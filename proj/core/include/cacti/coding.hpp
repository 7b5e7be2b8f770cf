#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cacti/tensor.hpp"

namespace cacti {

enum class MaskMode { kShifted, kRandomBinary, kRandomGray };

MaskMode mask_mode_from_string(const std::string& s);
std::string to_string(MaskMode m);

// Single wide binary mask the shifted schedule windows into per-frame codes.
struct MasterMask {
  Image2D values;  // n_x by (n_y + n_t - 1), entries in {0, 1}
  std::uint64_t seed = 0;
  double density = 0.5;
};

MasterMask make_master_mask(int n_x, int n_y_wide, std::uint64_t seed, double p = 0.5);

// Per-sub-frame code planes H_1..H_nt.
//   shifted:       H_k(i,j) = master(i, j + k - 1), one column per sub-frame
//   random-binary: fresh Bernoulli(p) draw per plane
//   random-gray:   fresh U[0,1) draw per plane
struct MaskSchedule {
  std::vector<Image2D> planes;
  MaskMode mode = MaskMode::kShifted;

  int n_x() const { return planes.empty() ? 0 : planes.front().n_x(); }
  int n_y() const { return planes.empty() ? 0 : planes.front().n_y(); }
  int n_t() const { return int(planes.size()); }
};

MaskSchedule make_schedule(int n_x, int n_y, int n_t, MaskMode mode, std::uint64_t seed,
                           double p = 0.5);

struct CodedSnapshot {
  Image2D y;
  MaskSchedule schedule;
  double noise_sigma = 0.0;
};

// Y = sum_k X_k .* H_k + N(0, sigma^2), summed in ascending k.
CodedSnapshot forward(const VideoCube& x, const MaskSchedule& s, double noise_sigma = 0.0,
                      std::uint64_t noise_seed = 0);

// Measurement image only (no snapshot wrapper); same sum as forward().
Image2D forward_image(const VideoCube& x, const MaskSchedule& s);

// Psi^T y: frame k = y .* H_k.
VideoCube adjoint(const Image2D& y, const MaskSchedule& s);

// diag(Phi Phi^T) as an image: pixelwise sum_k H_k^2, ascending k.
Image2D gram_diagonal(const MaskSchedule& s);

// Focus-sweep blur: each input pixel of frame k spreads over a normalized
// Gaussian with sigma(i,j,k) = blur_gain * |depth(i,j) - focus_of_frame[k]|,
// truncated at 3*sigma, reflective boundary. Spreading from the source pixel
// (rather than gathering at the destination) conserves per-frame intensity
// exactly for any depth map. sigma == 0 leaves the pixel in place.
VideoCube focus_blur(const VideoCube& x_sharp, const Image2D& depth_map,
                     const std::vector<double>& focus_of_frame, double blur_gain);

// Mask plane export/import: .pgm holds a binary plane (0/255), .csv a
// grayscale plane. Dispatch is by file extension.
void save_mask_plane(const Image2D& plane, const std::string& path);
Image2D load_mask_plane(const std::string& path);

}  // namespace cacti
