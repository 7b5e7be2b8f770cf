#pragma once

#include <array>

#include "cacti/tensor.hpp"

namespace cacti {

// Daubechies-8 scaling filter (16 taps), orthonormal normalization
// (sum h = sqrt(2), sum h^2 = 1). Values computed by spectral factorization
// of the degree-8 Daubechies polynomial.
inline constexpr std::array<double, 16> kDb8 = {
    5.4415842243081609e-02,  3.1287159091429997e-01,  6.7563073629728980e-01,
    5.8535468365420671e-01,  -1.5829105256349306e-02, -2.8401554296154692e-01,
    4.7248457391328277e-04,  1.2874742662047846e-01,  -1.7369301001807546e-02,
    -4.4088253930794752e-02, 1.3981027917398282e-02,  8.7460940474057767e-03,
    -4.8703529934515743e-03, -3.9174037337694705e-04, 6.7544940645056937e-04,
    -1.1747678412476953e-04};

// Periodized orthogonal 2D DWT over (x, y). The circular boundary keeps the
// per-frame transform exactly orthonormal for any even length at every level,
// so the 3D basis stays a true orthonormal matrix.
struct WaveletSpec {
  int levels = 3;
};

// L-level Mallat decomposition of one frame in place; approximation lands in
// the low-index corner. `pitch` is the distance in doubles between y rows
// (n_x for a plain frame). Requires n_x, n_y divisible by 2^levels.
void dwt2_forward(double* frame, int n_x, int n_y, int pitch, int levels);
void dwt2_inverse(double* frame, int n_x, int n_y, int pitch, int levels);

// Wavelet level owning coefficient (ix, iy): 0 for the approximation band,
// else 1 (coarsest ring) .. L (finest ring). Coefficients whose x and y
// indices fall in different rings take the max of the two.
int subband_level(int ix, int iy, const WaveletSpec& spec, int n_x, int n_y);

}  // namespace cacti
