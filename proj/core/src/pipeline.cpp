#include "cacti/pipeline.hpp"

#include <array>
#include <cstring>

#include "cacti/parallel.hpp"

namespace cacti {

MaskSchedule subsample_schedule(const MaskSchedule& s, BayerPattern p, int channel) {
  if (s.n_x() % 2 != 0 || s.n_y() % 2 != 0)
    throw DimensionError("subsample_schedule: schedule dims must be even");
  const SiteOffset site = channel_site(p, channel);
  MaskSchedule out;
  out.mode = s.mode;
  out.planes.reserve(s.planes.size());
  for (const Image2D& h : s.planes) {
    Image2D plane(h.n_x() / 2, h.n_y() / 2);
    for (int j = 0; j < plane.n_y(); ++j)
      for (int i = 0; i < plane.n_x(); ++i)
        plane.at(i, j) = h.at(2 * i + site.dx, 2 * j + site.dy);
    out.planes.push_back(std::move(plane));
  }
  return out;
}

namespace {

void check_lists(std::span<const Image2D> ys, std::span<const MaskSchedule> ss) {
  if (ys.empty() || ys.size() != ss.size())
    throw DimensionError("reconstruction needs matching measurement/schedule lists");
}

int equal_nt(std::span<const MaskSchedule> ss) {
  const int n_t = ss[0].n_t();
  for (const auto& s : ss)
    if (s.n_t() != n_t) throw DimensionError("snapshots must share the schedule structure");
  return n_t;
}

void copy_frames(VideoCube& dst, int dst_first, const VideoCube& src, int src_first, int count) {
  for (int k = 0; k < count; ++k)
    std::memcpy(dst.frame(dst_first + k), src.frame(src_first + k),
                src.frame_size() * sizeof(double));
}

}  // namespace

VideoCube independent_reconstruct(std::span<const Image2D> ys,
                                  std::span<const MaskSchedule> ss, const GapConfig& cfg,
                                  int workers, std::vector<SolverTrace>* traces,
                                  const VideoCube* ground_truth) {
  check_lists(ys, ss);
  const int S = int(ys.size());
  const int n_t = equal_nt(ss);
  VideoCube out(ss[0].n_x(), ss[0].n_y(), S * n_t);
  if (ground_truth && (ground_truth->n_x() != out.n_x() || ground_truth->n_y() != out.n_y() ||
                       ground_truth->n_t() != out.n_t()))
    throw DimensionError("independent_reconstruct: ground truth shape mismatch");
  if (traces) traces->assign(std::size_t(S), SolverTrace{});
  parallel_for_n(S, workers, [&](int j) {
    const GroupLayout layout = layout_for(ss[std::size_t(j)].n_x(), ss[std::size_t(j)].n_y(), n_t, cfg);
    GapConfig local = cfg;
    VideoCube gt_slice;
    if (ground_truth) {
      gt_slice = VideoCube(out.n_x(), out.n_y(), n_t);
      copy_frames(gt_slice, 0, *ground_truth, j * n_t, n_t);
      local.ground_truth = &gt_slice;
    }
    GapResult res = gap_solve(ys[std::size_t(j)], ss[std::size_t(j)], layout, local);
    copy_frames(out, j * n_t, res.video, 0, n_t);
    if (traces) (*traces)[std::size_t(j)] = std::move(res.trace);
  });
  return out;
}

OverlapResult overlap_reconstruct(std::span<const Image2D> ys,
                                  std::span<const MaskSchedule> ss, const GapConfig& cfg,
                                  int workers, std::vector<SolverTrace>* traces) {
  check_lists(ys, ss);
  const int S = int(ys.size());
  const int n_t = equal_nt(ss);
  if (S < 2) {
    return OverlapResult{independent_reconstruct(ys, ss, cfg, workers, traces), false};
  }

  const int n_x = ss[0].n_x();
  const int n_y = ss[0].n_y();
  const int pairs = S - 1;
  std::vector<VideoCube> pair_est(std::size_t(pairs));
  if (traces) traces->assign(std::size_t(pairs), SolverTrace{});
  parallel_for_n(pairs, workers, [&](int p) {
    const GroupLayout layout = layout_for(n_x, n_y, 2 * n_t, cfg);
    GapResult res = gap_solve_stacked(ys.subspan(std::size_t(p), 2),
                                      ss.subspan(std::size_t(p), 2), layout, cfg);
    pair_est[std::size_t(p)] = std::move(res.video);
    if (traces) (*traces)[std::size_t(p)] = std::move(res.trace);
  });

  // Window w collects the matching n_t block of each covering pair; interior
  // windows are the mean of two estimates, the boundary windows have one.
  VideoCube out(n_x, n_y, S * n_t);
  for (int w = 0; w < S; ++w) {
    const bool has_left = w > 0;
    const bool has_right = w < pairs;
    const double scale = (has_left && has_right) ? 0.5 : 1.0;
    double* dst0 = out.frame(w * n_t);
    const std::size_t count = out.frame_size() * std::size_t(n_t);
    if (has_left) {
      const double* src = pair_est[std::size_t(w - 1)].frame(n_t);
      for (std::size_t i = 0; i < count; ++i) dst0[i] += scale * src[i];
    }
    if (has_right) {
      const double* src = pair_est[std::size_t(w)].frame(0);
      for (std::size_t i = 0; i < count; ++i) dst0[i] += scale * src[i];
    }
  }
  return OverlapResult{std::move(out), true};
}

ColorResult reconstruct_color(std::span<const Image2D> mosaics,
                              std::span<const MaskSchedule> full_res, BayerPattern p,
                              const GapConfig& cfg, bool overlap, int workers,
                              SolverTrace* trace0) {
  check_lists(mosaics, full_res);
  const int S = int(mosaics.size());
  const int n_t = equal_nt(full_res);
  const int n_x = full_res[0].n_x();
  const int n_y = full_res[0].n_y();
  for (const auto& y : mosaics)
    if (y.n_x() != n_x || y.n_y() != n_y)
      throw DimensionError("reconstruct_color: measurement shape mismatch");

  // Channel measurements and schedules at quarter resolution.
  std::array<std::vector<Image2D>, 4> chan_ys;
  std::array<std::vector<MaskSchedule>, 4> chan_ss;
  for (int j = 0; j < S; ++j) {
    BayerQuad q = bayer_split(mosaics[std::size_t(j)], p);
    for (int c = 0; c < 4; ++c) {
      chan_ys[std::size_t(c)].push_back(std::move(q.channel(c)));
      chan_ss[std::size_t(c)].push_back(subsample_schedule(full_res[std::size_t(j)], p, c));
    }
  }

  std::array<VideoCube, 4> chan_est;
  bool overlapped = false;
  const int lanes = std::min(4, std::max(1, workers));
  const int inner = std::max(1, workers / lanes);
  parallel_for_n(4, lanes, [&](int c) {
    std::vector<SolverTrace> traces;
    std::vector<SolverTrace>* tp = (c == 0 && trace0) ? &traces : nullptr;
    if (overlap) {
      OverlapResult r =
          overlap_reconstruct(chan_ys[std::size_t(c)], chan_ss[std::size_t(c)], cfg, inner, tp);
      chan_est[std::size_t(c)] = std::move(r.video);
      if (c == 0) overlapped = r.overlapped;
    } else {
      chan_est[std::size_t(c)] = independent_reconstruct(chan_ys[std::size_t(c)],
                                                         chan_ss[std::size_t(c)], cfg, inner, tp);
    }
    if (tp && !traces.empty()) *trace0 = std::move(traces.front());
  });

  const int total = S * n_t;
  ColorResult res;
  res.overlapped = overlapped;
  res.video = ColorCube{VideoCube(n_x, n_y, total), VideoCube(n_x, n_y, total),
                        VideoCube(n_x, n_y, total)};
  for (int k = 0; k < total; ++k) {
    BayerQuad quad{chan_est[kChanR].frame_image(k), chan_est[kChanG1].frame_image(k),
                   chan_est[kChanG2].frame_image(k), chan_est[kChanB].frame_image(k)};
    const RgbImage rgb = demosaic(bayer_merge(quad, p), p);
    res.video.r.set_frame(k, rgb.r);
    res.video.g.set_frame(k, rgb.g);
    res.video.b.set_frame(k, rgb.b);
  }
  return res;
}

ColorCube reconstruct_color(const Image2D& mosaic, const MaskSchedule& full_res,
                            BayerPattern p, const GapConfig& cfg) {
  return reconstruct_color(std::span<const Image2D>(&mosaic, 1),
                           std::span<const MaskSchedule>(&full_res, 1), p, cfg,
                           /*overlap=*/false)
      .video;
}

}  // namespace cacti
