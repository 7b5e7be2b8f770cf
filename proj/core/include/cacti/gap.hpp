#pragma once

#include <span>
#include <string>
#include <vector>

#include "cacti/coding.hpp"
#include "cacti/transform3d.hpp"

namespace cacti {

// Partition of the coefficient cube into contiguous b_x x b_y x b_t blocks
// with one positive weight per group. The last temporal block is ragged when
// b_t does not divide n_t. Group g covers
//   [g_x*b_x,(g_x+1)*b_x) x [g_y*b_y,(g_y+1)*b_y) x [g_t*b_t, min((g_t+1)*b_t, n_t))
// with flat index g = g_x + gx_count*(g_y + gy_count*g_t).
struct GroupLayout {
  int n_x = 0, n_y = 0, n_t = 0;
  int b_x = 0, b_y = 0, b_t = 0;
  int gx_count = 0, gy_count = 0, gt_count = 0;
  std::vector<double> beta;

  int group_count() const { return gx_count * gy_count * gt_count; }

  struct Block {
    int x0, x1, y0, y1, t0, t1;
  };
  Block block(int g) const;

  // Flat coefficient indices of group g, ascending. For tests and tools; the
  // solver walks blocks directly.
  std::vector<std::size_t> group_indices(int g) const;
};

// round(n_t/4), half-to-even, floored at 1.
int default_block_t(int n_t);

// Weight of a group: a^(l-1) * a^(g_t-1), where l is the spatial wavelet
// level of the block (the approximation band shares the l=1 weight) and g_t
// is the 1-based temporal block index.
GroupLayout build_layout(int n_x, int n_y, int n_t, int levels, int b_x, int b_y, int b_t,
                         double a);

// Retained-group rank for the lambda schedule: ceil(m / (2 n_t / b_t)).
int default_m_star(int group_count, int n_t, int b_t);

struct GapConfig {
  int max_iters = 50;
  int m_star = 0;       // 0 -> default_m_star
  double weight_a = 1.5;
  int levels = 3;
  int b_x = 2;
  int b_y = 2;
  int b_t = 0;          // 0 -> default_block_t(n_t)
  const VideoCube* ground_truth = nullptr;  // enables rel_mse in the trace
};

GroupLayout layout_for(int n_x, int n_y, int n_t, const GapConfig& cfg);
int m_star_for(const GroupLayout& layout, const GapConfig& cfg);

struct TraceRow {
  int iter = 0;
  double lambda = 0.0;
  double residual_l2 = 0.0;
  double rel_mse = 0.0;  // meaningful only when the trace has ground truth
};

struct SolverTrace {
  std::vector<TraceRow> rows;
  bool has_ground_truth = false;
};

// CSV schema: "iter,lambda,residual_l2,rel_mse"; rel_mse left empty without
// ground truth. First line is a versioned comment.
void write_trace_csv(const SolverTrace& trace, const std::string& path);

// lambda = the (m_star+1)-th largest of ||w_G||_2 / beta_G, ties broken by
// lower group index (stable sort). Requires 1 <= m_star < group count.
double select_lambda(const CoefCube& w, const GroupLayout& layout, int m_star);

// Exact proximal map of lambda * sum_k beta_k ||w_Gk||_2:
// each group scales by max(1 - lambda*beta_k/||w_Gk||_2, 0).
CoefCube group_shrink(const CoefCube& w, const GroupLayout& layout, double lambda);

// Euclidean projection of theta onto {w : Phi w = y} using the diagonal
// Phi Phi^T: theta + analyze(adjoint(r / diag)) with r = y - Phi theta.
// Pixels with zero gram diagonal contribute nothing (pseudo-inverse).
CoefCube project_to_manifold(const CoefCube& theta, const Image2D& y, const MaskSchedule& s,
                             const Transform3& basis);

struct GapResult {
  VideoCube video;
  SolverTrace trace;
};

// GAP iteration from theta = 0: project -> select lambda -> group shrink,
// for max_iters. Any prefix of the iteration is a valid estimate; rerunning
// with a smaller max_iters reproduces the earlier iterate bit-for-bit.
GapResult gap_solve(const Image2D& y, const MaskSchedule& s, const GroupLayout& layout,
                    const GapConfig& cfg);

// Joint inversion of J consecutive snapshots: block-diagonal sensing over a
// (sum of n_t) frame cube with DCT length equal to the total frame count.
GapResult gap_solve_stacked(std::span<const Image2D> ys, std::span<const MaskSchedule> ss,
                            const GroupLayout& layout, const GapConfig& cfg);

// Plain iterative soft-thresholding on the same operator and basis, with a
// fixed threshold: theta <- soft(theta + analyze(adjoint(r / diag)), lambda).
// Comparison baseline; at lambda = 0 one iteration equals the projection.
VideoCube ist_baseline(const Image2D& y, const MaskSchedule& s, const WaveletSpec& wavelet,
                       double lambda_fixed, int iters,
                       const VideoCube* ground_truth = nullptr, SolverTrace* trace = nullptr);

}  // namespace cacti
