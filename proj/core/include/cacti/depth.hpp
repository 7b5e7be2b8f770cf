#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cacti/tensor.hpp"

namespace cacti {

// Focus measure: local variance of the 4-neighbor discrete Laplacian over a
// window x window neighborhood, reflective boundaries. Zero on constants,
// translation-equivariant, decreasing under blur.
Image2D sharpness(const Image2D& frame, int window);

struct FocusIndexMap {
  Image2D index;       // per-pixel best-focus frame index (fractional when refined)
  Image2D confidence;  // (max - median) / (max + eps) of the sharpness profile
};

// Per-pixel argmax over k of sharpness(frame k); ties take the smallest k.
// With refine_subframe a parabolic fit around the argmax gives sub-frame
// resolution (interior maxima only).
FocusIndexMap best_focus_index(const VideoCube& x, int window, bool refine_subframe = false);

// Frame-index -> depth table, strictly increasing in frame index.
struct DepthCalibration {
  std::vector<std::pair<double, double>> table;  // (frame index, depth)

  // Piecewise-linear depth at frame index t, clamped to the table span.
  double depth_at(double t) const;
};

DepthCalibration make_calibration(std::vector<std::pair<double, double>> entries);

// Two-column CSV (frame_index, depth_units); '#' lines ignored.
DepthCalibration load_calibration_csv(const std::string& path);

struct DepthMap {
  Image2D depth;       // NaN where invalid
  Image2D confidence;
  Image2D valid;       // 1.0 where confidence >= threshold
};

DepthMap depth_from_index(const FocusIndexMap& idx, const DepthCalibration& cal,
                          double confidence_threshold = 0.1);

// 16-bit PGM normalized over the calibration depth span; invalid pixels 0.
void write_depth_pgm(const DepthMap& map, const DepthCalibration& cal,
                     const std::string& path);

// Per-calibration-node statistics of the valid pixels whose index rounds to
// that node. Schema: frame,depth,pixels,mean_depth,mean_confidence.
void write_depth_region_csv(const FocusIndexMap& idx, const DepthMap& map,
                            const DepthCalibration& cal, const std::string& path);

}  // namespace cacti
