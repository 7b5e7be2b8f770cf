#pragma once

#include <cstdint>
#include <vector>

#include "cacti/bayer.hpp"
#include "cacti/tensor.hpp"

namespace cacti {

// Procedural test clip with natural-image statistics: a panning multi-octave
// noise background (roughly 1/f spectrum), moving textured sprites and a few
// hard-edged shapes. Values in [0.03, 0.97]. Deterministic in the seed.
VideoCube make_test_clip(int n_x, int n_y, int frames, std::uint64_t seed);

// Color variant: shared structure across channels with per-object tints.
ColorCube make_test_clip_color(int n_x, int n_y, int frames, std::uint64_t seed);

// Static scene of three textured depth bands observed through a focus sweep.
// focus_of_frame[k] = k in depth units, so band depths coincide with integer
// frame indices and truth_frame holds the exact best-focus frame per pixel.
struct ThreePlaneScene {
  VideoCube sharp;    // static scene repeated n_t times
  VideoCube swept;    // focus_blur applied
  Image2D depth_map;  // depth units = frame indices
  Image2D truth_frame;
  std::vector<double> focus_of_frame;
};

ThreePlaneScene make_three_plane_scene(int n_x, int n_y, int n_t, std::uint64_t seed,
                                       double blur_gain = 1.0);

}  // namespace cacti
