#include "cacti/gap.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <fstream>
#include <numeric>

namespace cacti {

GroupLayout::Block GroupLayout::block(int g) const {
  const int gx = g % gx_count;
  const int gy = (g / gx_count) % gy_count;
  const int gt = g / (gx_count * gy_count);
  Block b;
  b.x0 = gx * b_x;
  b.x1 = b.x0 + b_x;
  b.y0 = gy * b_y;
  b.y1 = b.y0 + b_y;
  b.t0 = gt * b_t;
  b.t1 = std::min(b.t0 + b_t, n_t);
  return b;
}

std::vector<std::size_t> GroupLayout::group_indices(int g) const {
  const Block b = block(g);
  std::vector<std::size_t> idx;
  idx.reserve(std::size_t(b_x) * b_y * b_t);
  for (int k = b.t0; k < b.t1; ++k)
    for (int iy = b.y0; iy < b.y1; ++iy)
      for (int ix = b.x0; ix < b.x1; ++ix)
        idx.push_back(std::size_t(ix) +
                      std::size_t(n_x) * (std::size_t(iy) + std::size_t(n_y) * k));
  return idx;
}

int default_block_t(int n_t) {
  // nearbyint under the default FE_TONEAREST mode rounds half to even.
  const int b = int(std::nearbyint(n_t / 4.0));
  return std::max(1, b);
}

GroupLayout build_layout(int n_x, int n_y, int n_t, int levels, int b_x, int b_y, int b_t,
                         double a) {
  if (b_x < 1 || b_y < 1 || b_t < 1) throw ConfigError("build_layout: block dims must be >= 1");
  if (n_x % b_x != 0 || n_y % b_y != 0)
    throw DimensionError("build_layout: b_x, b_y must divide the spatial dims");
  if (a <= 0.0) throw ConfigError("build_layout: weight base a must be positive");

  GroupLayout L;
  L.n_x = n_x;
  L.n_y = n_y;
  L.n_t = n_t;
  L.b_x = b_x;
  L.b_y = b_y;
  L.b_t = b_t;
  L.gx_count = n_x / b_x;
  L.gy_count = n_y / b_y;
  L.gt_count = (n_t + b_t - 1) / b_t;
  L.beta.resize(std::size_t(L.group_count()));

  const WaveletSpec wspec{levels};
  for (int gt = 0; gt < L.gt_count; ++gt) {
    for (int gy = 0; gy < L.gy_count; ++gy) {
      for (int gx = 0; gx < L.gx_count; ++gx) {
        // Spatial level of the block = level of its highest-index corner
        // (levels are nondecreasing in the coefficient index); the
        // approximation band shares the level-1 weight.
        const int lvl = subband_level(gx * b_x + b_x - 1, gy * b_y + b_y - 1, wspec, n_x, n_y);
        const int space_exp = std::max(lvl, 1) - 1;
        const std::size_t g =
            std::size_t(gx) + std::size_t(L.gx_count) * (std::size_t(gy) + std::size_t(L.gy_count) * gt);
        L.beta[g] = std::pow(a, space_exp) * std::pow(a, gt);
      }
    }
  }
  return L;
}

int default_m_star(int group_count, int n_t, int b_t) {
  const long long denom = 2LL * n_t;
  long long m = (static_cast<long long>(group_count) * b_t + denom - 1) / denom;
  m = std::clamp(m, 1LL, static_cast<long long>(group_count) - 1);
  return int(m);
}

GroupLayout layout_for(int n_x, int n_y, int n_t, const GapConfig& cfg) {
  const int b_t = cfg.b_t > 0 ? cfg.b_t : default_block_t(n_t);
  return build_layout(n_x, n_y, n_t, cfg.levels, cfg.b_x, cfg.b_y, b_t, cfg.weight_a);
}

int m_star_for(const GroupLayout& layout, const GapConfig& cfg) {
  if (cfg.m_star > 0) return cfg.m_star;
  return default_m_star(layout.group_count(), layout.n_t, layout.b_t);
}

namespace {

// One pass over the cube accumulating squared norms per group.
std::vector<double> group_norms(const CoefCube& w, const GroupLayout& L) {
  std::vector<double> acc(std::size_t(L.group_count()), 0.0);
  for (int k = 0; k < L.n_t; ++k) {
    const int gt = k / L.b_t;
    const double* fr = w.frame(k);
    for (int iy = 0; iy < L.n_y; ++iy) {
      const int gy = iy / L.b_y;
      const double* line = fr + std::size_t(iy) * L.n_x;
      double* dst =
          acc.data() + std::size_t(L.gx_count) * (std::size_t(gy) + std::size_t(L.gy_count) * gt);
      for (int ix = 0; ix < L.n_x; ++ix) {
        const double v = line[ix];
        dst[ix / L.b_x] += v * v;
      }
    }
  }
  for (double& v : acc) v = std::sqrt(v);
  return acc;
}

void check_layout_shape(const CoefCube& w, const GroupLayout& L) {
  if (w.n_x() != L.n_x || w.n_y() != L.n_y || w.n_t() != L.n_t)
    throw DimensionError("group layout does not match coefficient cube");
}

double lambda_from_norms(const std::vector<double>& norms, const GroupLayout& L, int m_star) {
  const int m = L.group_count();
  if (m_star < 1 || m_star >= m) throw ConfigError("m_star must satisfy 1 <= m_star < m");
  std::vector<int> order(std::size_t(m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ratio(std::size_t(m));
  for (int g = 0; g < m; ++g) ratio[std::size_t(g)] = norms[std::size_t(g)] / L.beta[std::size_t(g)];
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ratio[std::size_t(a)] > ratio[std::size_t(b)]; });
  return ratio[std::size_t(order[std::size_t(m_star)])];
}

CoefCube shrink_with_norms(const CoefCube& w, const GroupLayout& L,
                           const std::vector<double>& norms, double lambda) {
  if (lambda < 0.0) throw ConfigError("group_shrink: lambda must be >= 0");
  if (lambda == 0.0) return w;
  std::vector<double> factor(norms.size());
  for (std::size_t g = 0; g < norms.size(); ++g) {
    const double t = lambda * L.beta[g];
    factor[g] = (norms[g] > t) ? 1.0 - t / norms[g] : 0.0;
  }
  CoefCube out(L.n_x, L.n_y, L.n_t);
  for (int k = 0; k < L.n_t; ++k) {
    const int gt = k / L.b_t;
    const double* src = w.frame(k);
    double* dst = out.frame(k);
    for (int iy = 0; iy < L.n_y; ++iy) {
      const int gy = iy / L.b_y;
      const double* fac =
          factor.data() + std::size_t(L.gx_count) * (std::size_t(gy) + std::size_t(L.gy_count) * gt);
      const std::size_t off = std::size_t(iy) * L.n_x;
      for (int ix = 0; ix < L.n_x; ++ix) {
        dst[off + ix] = src[off + ix] * fac[ix / L.b_x];
      }
    }
  }
  return out;
}

double relative_mse(const VideoCube& est, const VideoCube& truth) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double d = est[i] - truth[i];
    num += d * d;
    den += truth[i] * truth[i];
  }
  return den > 0.0 ? num / den : num;
}

struct Stack {
  std::span<const Image2D> ys;
  std::span<const MaskSchedule> ss;
  std::vector<Image2D> diag;
  std::vector<int> offset;  // first frame of each snapshot in the joint cube
  int n_x = 0, n_y = 0, n_t_total = 0;
};

Stack make_stack(std::span<const Image2D> ys, std::span<const MaskSchedule> ss) {
  if (ys.empty() || ys.size() != ss.size())
    throw DimensionError("solver needs matching measurement/schedule lists");
  Stack st{ys, ss, {}, {}, ss[0].n_x(), ss[0].n_y(), 0};
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (ys[j].n_x() != st.n_x || ys[j].n_y() != st.n_y || ss[j].n_x() != st.n_x ||
        ss[j].n_y() != st.n_y)
      throw DimensionError("solver: snapshot/schedule shape mismatch");
    st.offset.push_back(st.n_t_total);
    st.n_t_total += ss[j].n_t();
    st.diag.push_back(gram_diagonal(ss[j]));
  }
  return st;
}

// y_j = sum_k x[offset_j + k] .* H_jk, residual r_j = y_j - that.
std::vector<Image2D> stack_residuals(const Stack& st, const VideoCube& x) {
  std::vector<Image2D> rs;
  rs.reserve(st.ys.size());
  for (std::size_t j = 0; j < st.ys.size(); ++j) {
    Image2D r = st.ys[j];
    const std::size_t fs = r.size();
    for (int k = 0; k < st.ss[j].n_t(); ++k) {
      const double* xf = x.frame(st.offset[j] + k);
      const Image2D& h = st.ss[j].planes[std::size_t(k)];
      for (std::size_t i = 0; i < fs; ++i) r[i] -= xf[i] * h[i];
    }
    rs.push_back(std::move(r));
  }
  return rs;
}

// Divides residuals by the gram diagonal (zero stays zero) and applies the
// stacked adjoint into a fresh cube.
VideoCube stack_adjoint_scaled(const Stack& st, std::vector<Image2D>& rs) {
  VideoCube out(st.n_x, st.n_y, st.n_t_total);
  for (std::size_t j = 0; j < rs.size(); ++j) {
    Image2D& r = rs[j];
    const Image2D& d = st.diag[j];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = d[i] > 0.0 ? r[i] / d[i] : 0.0;
    const std::size_t fs = r.size();
    for (int k = 0; k < st.ss[j].n_t(); ++k) {
      double* xf = out.frame(st.offset[j] + k);
      const Image2D& h = st.ss[j].planes[std::size_t(k)];
      for (std::size_t i = 0; i < fs; ++i) xf[i] = r[i] * h[i];
    }
  }
  return out;
}

double stack_residual_norm(const std::vector<Image2D>& rs) {
  double acc = 0.0;
  for (const auto& r : rs)
    for (double v : r.values()) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace

double select_lambda(const CoefCube& w, const GroupLayout& layout, int m_star) {
  check_layout_shape(w, layout);
  return lambda_from_norms(group_norms(w, layout), layout, m_star);
}

CoefCube group_shrink(const CoefCube& w, const GroupLayout& layout, double lambda) {
  check_layout_shape(w, layout);
  return shrink_with_norms(w, layout, group_norms(w, layout), lambda);
}

CoefCube project_to_manifold(const CoefCube& theta, const Image2D& y, const MaskSchedule& s,
                             const Transform3& basis) {
  std::span<const Image2D> ys(&y, 1);
  std::span<const MaskSchedule> ss(&s, 1);
  const Stack st = make_stack(ys, ss);
  auto rs = stack_residuals(st, basis.synthesize(theta));
  CoefCube w = basis.analyze(stack_adjoint_scaled(st, rs));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += theta[i];
  return w;
}

GapResult gap_solve_stacked(std::span<const Image2D> ys, std::span<const MaskSchedule> ss,
                            const GroupLayout& layout, const GapConfig& cfg) {
  const Stack st = make_stack(ys, ss);
  if (layout.n_x != st.n_x || layout.n_y != st.n_y || layout.n_t != st.n_t_total)
    throw DimensionError("gap_solve: layout shape mismatch");
  if (cfg.max_iters < 1) throw ConfigError("gap_solve: max_iters must be >= 1");
  const Transform3 basis(st.n_x, st.n_y, st.n_t_total, WaveletSpec{cfg.levels});
  const int m_star = m_star_for(layout, cfg);

  const VideoCube* gt = cfg.ground_truth;
  if (gt && (gt->n_x() != st.n_x || gt->n_y() != st.n_y || gt->n_t() != st.n_t_total))
    throw DimensionError("gap_solve: ground truth shape mismatch");

  SolverTrace trace;
  trace.has_ground_truth = gt != nullptr;
  trace.rows.reserve(std::size_t(cfg.max_iters));

  CoefCube theta(st.n_x, st.n_y, st.n_t_total);
  VideoCube x_est(st.n_x, st.n_y, st.n_t_total);
  for (int t = 1; t <= cfg.max_iters; ++t) {
    x_est = basis.synthesize(theta);
    auto rs = stack_residuals(st, x_est);
    if (t > 1) {
      trace.rows[std::size_t(t - 2)].residual_l2 = stack_residual_norm(rs);
      if (gt) trace.rows[std::size_t(t - 2)].rel_mse = relative_mse(x_est, *gt);
    }
    CoefCube w = basis.analyze(stack_adjoint_scaled(st, rs));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += theta[i];
    const auto norms = group_norms(w, layout);
    const double lambda = lambda_from_norms(norms, layout, m_star);
    theta = shrink_with_norms(w, layout, norms, lambda);
    trace.rows.push_back(TraceRow{t, lambda, 0.0, 0.0});
  }
  x_est = basis.synthesize(theta);
  auto rs = stack_residuals(st, x_est);
  trace.rows.back().residual_l2 = stack_residual_norm(rs);
  if (gt) trace.rows.back().rel_mse = relative_mse(x_est, *gt);
  return GapResult{std::move(x_est), std::move(trace)};
}

GapResult gap_solve(const Image2D& y, const MaskSchedule& s, const GroupLayout& layout,
                    const GapConfig& cfg) {
  return gap_solve_stacked(std::span<const Image2D>(&y, 1),
                           std::span<const MaskSchedule>(&s, 1), layout, cfg);
}

VideoCube ist_baseline(const Image2D& y, const MaskSchedule& s, const WaveletSpec& wavelet,
                       double lambda_fixed, int iters, const VideoCube* ground_truth,
                       SolverTrace* trace) {
  if (lambda_fixed < 0.0) throw ConfigError("ist_baseline: lambda must be >= 0");
  if (iters < 1) throw ConfigError("ist_baseline: iters must be >= 1");
  std::span<const Image2D> ys(&y, 1);
  std::span<const MaskSchedule> ss(&s, 1);
  const Stack st = make_stack(ys, ss);
  const Transform3 basis(st.n_x, st.n_y, st.n_t_total, wavelet);

  if (trace) {
    trace->rows.clear();
    trace->has_ground_truth = ground_truth != nullptr;
    trace->rows.reserve(std::size_t(iters));
  }

  CoefCube theta(st.n_x, st.n_y, st.n_t_total);
  VideoCube x_est(st.n_x, st.n_y, st.n_t_total);
  for (int t = 1; t <= iters; ++t) {
    x_est = basis.synthesize(theta);
    auto rs = stack_residuals(st, x_est);
    if (trace && t > 1) {
      trace->rows[std::size_t(t - 2)].residual_l2 = stack_residual_norm(rs);
      if (ground_truth) trace->rows[std::size_t(t - 2)].rel_mse = relative_mse(x_est, *ground_truth);
    }
    CoefCube w = basis.analyze(stack_adjoint_scaled(st, rs));
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double v = w[i] + theta[i];
      const double m = std::abs(v) - lambda_fixed;
      theta[i] = m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
    }
    if (trace) trace->rows.push_back(TraceRow{t, lambda_fixed, 0.0, 0.0});
  }
  x_est = basis.synthesize(theta);
  if (trace) {
    auto rs = stack_residuals(st, x_est);
    trace->rows.back().residual_l2 = stack_residual_norm(rs);
    if (ground_truth) trace->rows.back().rel_mse = relative_mse(x_est, *ground_truth);
  }
  return x_est;
}

void write_trace_csv(const SolverTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "# cacti trace v1\n";
  out << "iter,lambda,residual_l2,rel_mse\n";
  out.precision(12);
  for (const auto& r : trace.rows) {
    out << r.iter << "," << r.lambda << "," << r.residual_l2 << ",";
    if (trace.has_ground_truth) out << r.rel_mse;
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace cacti
