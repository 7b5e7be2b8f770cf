#pragma once

#include <span>
#include <vector>

#include "cacti/bayer.hpp"
#include "cacti/gap.hpp"

namespace cacti {

// Mask planes seen by one mosaiced component: the full-resolution planes
// sampled at that channel's Bayer sites (the physical mask sits over the
// whole sensor).
MaskSchedule subsample_schedule(const MaskSchedule& s, BayerPattern p, int channel);

// Per-snapshot inversion, frames concatenated in snapshot order. When a
// ground-truth cube over all frames is given, each solve traces rel_mse
// against its slice.
VideoCube independent_reconstruct(std::span<const Image2D> ys,
                                  std::span<const MaskSchedule> ss, const GapConfig& cfg,
                                  int workers = 1,
                                  std::vector<SolverTrace>* traces = nullptr,
                                  const VideoCube* ground_truth = nullptr);

struct OverlapResult {
  VideoCube video;
  bool overlapped = false;  // false: fell back to independent inversion
};

// Temporal-overlap reconstruction: every adjacent snapshot pair is inverted
// jointly over 2*n_t frames; each interior n_t window is the mean of its two
// pairwise estimates, the first and last windows come from a single joint
// inversion. With fewer than 2 snapshots this degrades to independent
// inversion and reports overlapped = false.
OverlapResult overlap_reconstruct(std::span<const Image2D> ys,
                                  std::span<const MaskSchedule> ss, const GapConfig& cfg,
                                  int workers = 1,
                                  std::vector<SolverTrace>* traces = nullptr);

struct ColorResult {
  ColorCube video;
  bool overlapped = false;
};

// Bayer pipeline: split each mosaic measurement into R/G1/G2/B components,
// invert the four channels independently against their subsampled schedules,
// merge per frame and demosaic. Channels run as independent jobs; the output
// does not depend on completion order.
ColorResult reconstruct_color(std::span<const Image2D> mosaics,
                              std::span<const MaskSchedule> full_res, BayerPattern p,
                              const GapConfig& cfg, bool overlap, int workers = 1,
                              SolverTrace* trace0 = nullptr);

// Single-snapshot convenience wrapper.
ColorCube reconstruct_color(const Image2D& mosaic, const MaskSchedule& full_res,
                            BayerPattern p, const GapConfig& cfg);

}  // namespace cacti
