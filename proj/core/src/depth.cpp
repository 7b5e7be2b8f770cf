#include "cacti/depth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cacti/image_io.hpp"

namespace cacti {

namespace {

Image2D laplacian(const Image2D& f) {
  const int n_x = f.n_x();
  const int n_y = f.n_y();
  Image2D out(n_x, n_y);
  for (int j = 0; j < n_y; ++j) {
    for (int i = 0; i < n_x; ++i) {
      out.at(i, j) = f.at(reflect_index(i - 1, n_x), j) + f.at(reflect_index(i + 1, n_x), j) +
                     f.at(i, reflect_index(j - 1, n_y)) + f.at(i, reflect_index(j + 1, n_y)) -
                     4.0 * f.at(i, j);
    }
  }
  return out;
}

// Separable box mean with reflective boundary.
Image2D box_mean(const Image2D& f, int radius) {
  const int n_x = f.n_x();
  const int n_y = f.n_y();
  Image2D tmp(n_x, n_y);
  for (int j = 0; j < n_y; ++j) {
    for (int i = 0; i < n_x; ++i) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d) acc += f.at(reflect_index(i + d, n_x), j);
      tmp.at(i, j) = acc;
    }
  }
  Image2D out(n_x, n_y);
  const double norm = 1.0 / double((2 * radius + 1) * (2 * radius + 1));
  for (int j = 0; j < n_y; ++j) {
    for (int i = 0; i < n_x; ++i) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d) acc += tmp.at(i, reflect_index(j + d, n_y));
      out.at(i, j) = acc * norm;
    }
  }
  return out;
}

}  // namespace

Image2D sharpness(const Image2D& frame, int window) {
  if (window < 3 || window % 2 == 0) throw ConfigError("sharpness: window must be odd and >= 3");
  const int radius = window / 2;
  const Image2D lap = laplacian(frame);
  Image2D lap2(lap.n_x(), lap.n_y());
  for (std::size_t i = 0; i < lap.size(); ++i) lap2[i] = lap[i] * lap[i];
  const Image2D m1 = box_mean(lap, radius);
  const Image2D m2 = box_mean(lap2, radius);
  Image2D out(lap.n_x(), lap.n_y());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, m2[i] - m1[i] * m1[i]);
  return out;
}

FocusIndexMap best_focus_index(const VideoCube& x, int window, bool refine_subframe) {
  if (x.n_t() < 2) throw ConfigError("best_focus_index: needs at least 2 frames");
  const int n_t = x.n_t();
  std::vector<Image2D> maps;
  maps.reserve(std::size_t(n_t));
  for (int k = 0; k < n_t; ++k) maps.push_back(sharpness(x.frame_image(k), window));

  constexpr double kEps = 1e-12;
  FocusIndexMap out{Image2D(x.n_x(), x.n_y()), Image2D(x.n_x(), x.n_y())};
  std::vector<double> profile(std::size_t(n_t));
  for (std::size_t i = 0; i < out.index.size(); ++i) {
    int best = 0;
    for (int k = 0; k < n_t; ++k) {
      profile[std::size_t(k)] = maps[std::size_t(k)][i];
      if (profile[std::size_t(k)] > profile[std::size_t(best)]) best = k;
    }
    const double peak = profile[std::size_t(best)];
    std::vector<double> sorted = profile;
    std::nth_element(sorted.begin(), sorted.begin() + n_t / 2, sorted.end());
    const double median = sorted[std::size_t(n_t / 2)];
    out.confidence[i] = std::clamp((peak - median) / (peak + kEps), 0.0, 1.0);

    double idx = double(best);
    if (refine_subframe && best > 0 && best < n_t - 1) {
      const double a = profile[std::size_t(best - 1)];
      const double b = profile[std::size_t(best)];
      const double c = profile[std::size_t(best + 1)];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) {
        const double delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
        idx += delta;
      }
    }
    out.index[i] = idx;
  }
  return out;
}

DepthCalibration make_calibration(std::vector<std::pair<double, double>> entries) {
  if (entries.size() < 2) throw DataError("depth calibration needs at least 2 entries");
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first <= entries[i - 1].first)
      throw DataError("depth calibration frame indices must increase strictly");
  return DepthCalibration{std::move(entries)};
}

double DepthCalibration::depth_at(double t) const {
  const auto& tb = table;
  if (tb.size() < 2) throw DataError("degenerate depth calibration");
  t = std::clamp(t, tb.front().first, tb.back().first);
  std::size_t hi = 1;
  while (hi + 1 < tb.size() && tb[hi].first < t) ++hi;
  const auto& [k0, d0] = tb[hi - 1];
  const auto& [k1, d1] = tb[hi];
  const double u = (t - k0) / (k1 - k0);
  return d0 + u * (d1 - d0);
}

DepthCalibration load_calibration_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open calibration: " + path);
  std::vector<std::pair<double, double>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw DataError("calibration rows need two columns: " + path);
    entries.emplace_back(std::stod(a), std::stod(b));
  }
  return make_calibration(std::move(entries));
}

DepthMap depth_from_index(const FocusIndexMap& idx, const DepthCalibration& cal,
                          double confidence_threshold) {
  if (!idx.index.same_shape(idx.confidence))
    throw DimensionError("depth_from_index: index/confidence shape mismatch");
  DepthMap map{Image2D(idx.index.n_x(), idx.index.n_y()), idx.confidence,
               Image2D(idx.index.n_x(), idx.index.n_y())};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < map.depth.size(); ++i) {
    if (idx.confidence[i] >= confidence_threshold) {
      map.depth[i] = cal.depth_at(idx.index[i]);
      map.valid[i] = 1.0;
    } else {
      map.depth[i] = nan;  // invalid pixels carry no depth
      map.valid[i] = 0.0;
    }
  }
  return map;
}

void write_depth_pgm(const DepthMap& map, const DepthCalibration& cal,
                     const std::string& path) {
  double lo = cal.table.front().second;
  double hi = cal.table.back().second;
  if (lo > hi) std::swap(lo, hi);
  const double span = hi > lo ? hi - lo : 1.0;
  Image2D img(map.depth.n_x(), map.depth.n_y());
  for (std::size_t i = 0; i < img.size(); ++i) {
    img[i] = map.valid[i] > 0.0 ? (map.depth[i] - lo) / span : 0.0;
  }
  // 16-bit so nearby depths stay distinguishable.
  write_pgm(img, path, 16);
}

void write_depth_region_csv(const FocusIndexMap& idx, const DepthMap& map,
                            const DepthCalibration& cal, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "# cacti depth-regions v1\n";
  out << "frame,depth,pixels,mean_depth,mean_confidence\n";
  out.precision(10);
  for (const auto& [frame, depth] : cal.table) {
    std::size_t count = 0;
    double depth_acc = 0.0, conf_acc = 0.0;
    for (std::size_t i = 0; i < idx.index.size(); ++i) {
      if (map.valid[i] == 0.0) continue;
      // nearest table node by frame index
      double best = cal.table.front().first;
      double best_d = std::abs(idx.index[i] - best);
      for (const auto& [f2, d2] : cal.table) {
        const double dd = std::abs(idx.index[i] - f2);
        if (dd < best_d) {
          best_d = dd;
          best = f2;
        }
      }
      if (best != frame) continue;
      ++count;
      depth_acc += map.depth[i];
      conf_acc += map.confidence[i];
    }
    out << frame << "," << depth << "," << count << ",";
    if (count > 0) {
      out << depth_acc / double(count) << "," << conf_acc / double(count);
    } else {
      out << ",";
    }
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace cacti
