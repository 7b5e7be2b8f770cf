#include "cacti/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "cacti/bayer.hpp"
#include "cacti/depth.hpp"
#include "cacti/image_io.hpp"
#include "cacti/parallel.hpp"
#include "cacti/pipeline.hpp"
#include "cacti/rng.hpp"
#include "cacti/synthetic.hpp"

namespace cacti {

namespace fs = std::filesystem;

namespace {

int to_int(const std::string& v, const std::string& key) {
  try {
    return std::stoi(v);
  } catch (...) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
  try {
    return std::stoull(v);
  } catch (...) {
    throw ConfigError("bad seed for " + key + ": " + v);
  }
}

double to_double(const std::string& v, const std::string& key) {
  try {
    return std::stod(v);
  } catch (...) {
    throw ConfigError("bad number for " + key + ": " + v);
  }
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

std::string index_name(const char* prefix, int idx, int width, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%0*d%s", prefix, width, idx, ext.c_str());
  return buf;
}

std::string mask_name(int snap, int plane, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "mask_s%03d_p%02d%s", snap, plane, ext.c_str());
  return buf;
}

using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const std::string& path, const Manifest& kv) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "# cacti manifest v1\n";
  for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
  if (!out) throw DataError("write failed: " + path);
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

void push_common(Manifest& m, const RunConfig& cfg) {
  m.emplace_back("nt", std::to_string(cfg.n_t));
  m.emplace_back("snapshots", std::to_string(cfg.snapshots));
  m.emplace_back("mask_mode", cfg.mask_mode);
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("noise_sigma", fmt(cfg.noise_sigma));
  m.emplace_back("mask_density", fmt(cfg.mask_density));
  m.emplace_back("color", cfg.color ? "1" : "0");
  m.emplace_back("bayer_pattern", cfg.bayer_pattern);
}

void push_solver(Manifest& m, const RunConfig& cfg) {
  m.emplace_back("iters", std::to_string(cfg.iters));
  m.emplace_back("m_star", std::to_string(cfg.m_star));
  m.emplace_back("weight_a", fmt(cfg.weight_a));
  m.emplace_back("levels", std::to_string(cfg.levels));
  m.emplace_back("bx", std::to_string(cfg.b_x));
  m.emplace_back("by", std::to_string(cfg.b_y));
  m.emplace_back("bt", std::to_string(cfg.b_t));
  m.emplace_back("overlap", cfg.overlap ? "1" : "0");
}

std::uint64_t schedule_seed(const RunConfig& cfg, int snapshot) {
  if (mask_mode_from_string(cfg.mask_mode) == MaskMode::kShifted) return cfg.seed;
  // distinct draws per snapshot for the per-frame random modes
  return splitmix64(cfg.seed ^ splitmix64(std::uint64_t(snapshot) + 0x77102afbULL));
}

std::uint64_t noise_seed(const RunConfig& cfg, int snapshot) {
  return splitmix64(cfg.seed ^ splitmix64(std::uint64_t(snapshot) + 0x3c6ef372ULL));
}

std::vector<std::string> input_frame_paths(const RunConfig& cfg, int needed) {
  if (cfg.input_dir.empty()) throw ConfigError("input directory required");
  const auto paths = list_frames(cfg.input_dir);
  if (int(paths.size()) < needed)
    throw DataError("input sequence too short: have " + std::to_string(paths.size()) +
                    " frames, need " + std::to_string(needed));
  return paths;
}

void check_uniform(const Image2D& img, int n_x, int n_y, const std::string& path) {
  if (img.n_x() != n_x || img.n_y() != n_y)
    throw DataError("frame size differs from the first frame: " + path);
}

VideoCube load_gray_cube(const std::vector<std::string>& paths, int from, int count) {
  Image2D first = read_image_gray(paths[std::size_t(from)]);
  VideoCube cube(first.n_x(), first.n_y(), count);
  cube.set_frame(0, first);
  for (int k = 1; k < count; ++k) {
    Image2D f = read_image_gray(paths[std::size_t(from + k)]);
    check_uniform(f, cube.n_x(), cube.n_y(), paths[std::size_t(from + k)]);
    cube.set_frame(k, f);
  }
  return cube;
}

ColorCube load_color_cube(const std::vector<std::string>& paths, int from, int count) {
  RgbImage first = read_image_rgb(paths[std::size_t(from)]);
  ColorCube cube{VideoCube(first.r.n_x(), first.r.n_y(), count),
                 VideoCube(first.r.n_x(), first.r.n_y(), count),
                 VideoCube(first.r.n_x(), first.r.n_y(), count)};
  cube.r.set_frame(0, first.r);
  cube.g.set_frame(0, first.g);
  cube.b.set_frame(0, first.b);
  for (int k = 1; k < count; ++k) {
    RgbImage f = read_image_rgb(paths[std::size_t(from + k)]);
    check_uniform(f.r, cube.r.n_x(), cube.r.n_y(), paths[std::size_t(from + k)]);
    cube.r.set_frame(k, f.r);
    cube.g.set_frame(k, f.g);
    cube.b.set_frame(k, f.b);
  }
  return cube;
}

void validate_solver_params(const RunConfig& cfg) {
  if (cfg.n_t < 1) throw ConfigError("nt must be >= 1");
  if (cfg.snapshots < 1) throw ConfigError("snapshots must be >= 1");
  if (cfg.iters < 1) throw ConfigError("iters must be >= 1");
  if (cfg.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (cfg.mask_density <= 0.0 || cfg.mask_density >= 1.0)
    throw ConfigError("mask_density must be in (0,1)");
  if (cfg.levels < 1) throw ConfigError("levels must be >= 1");
  if (cfg.b_x < 1 || cfg.b_y < 1 || cfg.b_t < 0) throw ConfigError("bad block dims");
  if (cfg.weight_a <= 0.0) throw ConfigError("weight_a must be positive");
  if (cfg.m_star < 0) throw ConfigError("m_star must be >= 0 (0 = auto)");
  bayer_pattern_from_string(cfg.bayer_pattern);  // validates
  mask_mode_from_string(cfg.mask_mode);
}

int resolved_workers(const RunConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : default_workers();
}

std::string require_key(const std::map<std::string, std::string>& man, const std::string& key,
                        const std::string& path) {
  const auto it = man.find(key);
  if (it == man.end()) throw DataError("manifest missing key '" + key + "': " + path);
  return it->second;
}

void write_metrics_csv(const std::string& path, const std::vector<double>& psnrs,
                       bool have_truth) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "# cacti metrics v1\n";
  out << "frame,psnr\n";
  out.precision(10);
  for (std::size_t i = 0; i < psnrs.size(); ++i) {
    out << i << ",";
    if (have_truth) {
      if (std::isinf(psnrs[i]))
        out << "inf";
      else
        out << psnrs[i];
    }
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace

GapConfig RunConfig::gap() const {
  GapConfig g;
  g.max_iters = iters;
  g.m_star = m_star;
  g.weight_a = weight_a;
  g.levels = levels;
  g.b_x = b_x;
  g.b_y = b_y;
  g.b_t = b_t;
  return g;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "mode") cfg.mode = value;
  else if (key == "input_dir") cfg.input_dir = value;
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "calibration") cfg.calibration = value;
  else if (key == "nt") cfg.n_t = to_int(value, key);
  else if (key == "snapshots") cfg.snapshots = to_int(value, key);
  else if (key == "frames") cfg.frames = to_int(value, key);
  else if (key == "size_x") cfg.size_x = to_int(value, key);
  else if (key == "size_y") cfg.size_y = to_int(value, key);
  else if (key == "mask_mode") cfg.mask_mode = value;
  else if (key == "seed") cfg.seed = to_u64(value, key);
  else if (key == "noise_sigma") cfg.noise_sigma = to_double(value, key);
  else if (key == "mask_density") cfg.mask_density = to_double(value, key);
  else if (key == "iters") cfg.iters = to_int(value, key);
  else if (key == "m_star") cfg.m_star = to_int(value, key);
  else if (key == "weight_a") cfg.weight_a = to_double(value, key);
  else if (key == "levels") cfg.levels = to_int(value, key);
  else if (key == "bx") cfg.b_x = to_int(value, key);
  else if (key == "by") cfg.b_y = to_int(value, key);
  else if (key == "bt") cfg.b_t = to_int(value, key);
  else if (key == "overlap") cfg.overlap = to_bool(value, key);
  else if (key == "color") cfg.color = to_bool(value, key);
  else if (key == "bayer_pattern") cfg.bayer_pattern = value;
  else if (key == "depth_window") cfg.depth_window = to_int(value, key);
  else if (key == "confidence_threshold") cfg.confidence_threshold = to_double(value, key);
  else if (key == "refine_subframe") cfg.refine_subframe = to_bool(value, key);
  else if (key == "workers") cfg.workers = to_int(value, key);
  else if (key == "frame_format") cfg.frame_format = value;
  else throw ConfigError("unknown config key: " + key);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key=value: " + path);
    apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

std::map<std::string, std::string> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("bad manifest line: " + line);
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

void run_make_clip(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("output directory required");
  if (cfg.frames < 1) throw ConfigError("frames must be >= 1");
  if (cfg.size_x < 8 || cfg.size_y < 8) throw ConfigError("clip size too small");
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  if (cfg.color) {
    const ColorCube clip = make_test_clip_color(cfg.size_x, cfg.size_y, cfg.frames, cfg.seed);
    for (int k = 0; k < cfg.frames; ++k) {
      RgbImage f{clip.r.frame_image(k), clip.g.frame_image(k), clip.b.frame_image(k)};
      write_image_rgb(f, (out / index_name("frame_", k, 4, ".ppm")).string());
    }
  } else {
    const VideoCube clip = make_test_clip(cfg.size_x, cfg.size_y, cfg.frames, cfg.seed);
    for (int k = 0; k < cfg.frames; ++k) {
      write_pgm(clip.frame_image(k), (out / index_name("frame_", k, 4, ".pgm")).string(), 16);
    }
  }

  Manifest m;
  m.emplace_back("command", "make-clip");
  m.emplace_back("frames", std::to_string(cfg.frames));
  m.emplace_back("size_x", std::to_string(cfg.size_x));
  m.emplace_back("size_y", std::to_string(cfg.size_y));
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("color", cfg.color ? "1" : "0");
  write_manifest((out / "manifest.txt").string(), m);
}

void run_simulate(const RunConfig& cfg) {
  validate_solver_params(cfg);
  if (cfg.output_dir.empty()) throw ConfigError("output directory required");
  const int needed = cfg.n_t * cfg.snapshots;
  const auto paths = input_frame_paths(cfg, needed);
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  const MaskMode mode = mask_mode_from_string(cfg.mask_mode);
  const std::string mask_ext = mode == MaskMode::kRandomGray ? ".csv" : ".pgm";
  const BayerPattern pattern = bayer_pattern_from_string(cfg.bayer_pattern);
  // Measurements can reach n_t; stored in 16-bit PGM after this scale.
  const double scale = double(cfg.n_t);

  int n_x = 0, n_y = 0;
  Manifest m;
  std::vector<std::string> truth_paths;

  for (int j = 0; j < cfg.snapshots; ++j) {
    VideoCube sensor_cube;
    if (cfg.color) {
      const ColorCube block = load_color_cube(paths, j * cfg.n_t, cfg.n_t);
      sensor_cube = mosaic_video(block, pattern);
    } else {
      sensor_cube = load_gray_cube(paths, j * cfg.n_t, cfg.n_t);
    }
    if (j == 0) {
      n_x = sensor_cube.n_x();
      n_y = sensor_cube.n_y();
    } else if (sensor_cube.n_x() != n_x || sensor_cube.n_y() != n_y) {
      throw DataError("frame size changes between snapshots");
    }
    const MaskSchedule schedule =
        make_schedule(n_x, n_y, cfg.n_t, mode, schedule_seed(cfg, j), cfg.mask_density);
    const CodedSnapshot snap =
        forward(sensor_cube, schedule, cfg.noise_sigma, noise_seed(cfg, j));

    Image2D scaled(snap.y.n_x(), snap.y.n_y());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = snap.y[i] / scale;
    write_pgm(scaled, (out / index_name("snapshot_", j, 3, ".pgm")).string(), 16);
    for (int k = 0; k < cfg.n_t; ++k) {
      save_mask_plane(schedule.planes[std::size_t(k)], (out / mask_name(j, k, mask_ext)).string());
      truth_paths.push_back(fs::absolute(paths[std::size_t(j * cfg.n_t + k)]).string());
    }
  }

  m.emplace_back("command", "simulate");
  m.emplace_back("nx", std::to_string(n_x));
  m.emplace_back("ny", std::to_string(n_y));
  push_common(m, cfg);
  m.emplace_back("snapshot_scale", fmt(scale));
  m.emplace_back("mask_ext", mask_ext);
  for (int j = 0; j < cfg.snapshots; ++j)
    m.emplace_back(index_name("snapshot_", j, 3, ""), index_name("snapshot_", j, 3, ".pgm"));
  for (std::size_t i = 0; i < truth_paths.size(); ++i)
    m.emplace_back(index_name("truth_", int(i), 4, ""), truth_paths[i]);
  write_manifest((out / "manifest.txt").string(), m);

  if (cfg.mode == "simulate+reconstruct") {
    RunConfig next = cfg;
    next.mode = "reconstruct";
    next.input_dir = cfg.output_dir;
    next.output_dir = (out / "recon").string();
    run_reconstruct(next);
  }
}

namespace {

struct SimData {
  int n_x = 0, n_y = 0, n_t = 0, snapshots = 0;
  bool color = false;
  BayerPattern pattern = BayerPattern::kRGGB;
  std::vector<Image2D> ys;
  std::vector<MaskSchedule> schedules;
  VideoCube truth_gray;       // gray runs, when available
  ColorCube truth_color;      // color runs, when available
  bool have_truth = false;
};

SimData load_sim_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.input_dir);
  const std::string man_path = (dir / "manifest.txt").string();
  if (!fs::exists(man_path))
    throw DataError("missing simulation manifest (schedule unavailable): " + man_path);
  const auto man = read_manifest(man_path);

  SimData d;
  d.n_x = to_int(require_key(man, "nx", man_path), "nx");
  d.n_y = to_int(require_key(man, "ny", man_path), "ny");
  d.n_t = to_int(require_key(man, "nt", man_path), "nt");
  d.snapshots = to_int(require_key(man, "snapshots", man_path), "snapshots");
  d.color = require_key(man, "color", man_path) == "1";
  d.pattern = bayer_pattern_from_string(require_key(man, "bayer_pattern", man_path));
  const double scale = to_double(require_key(man, "snapshot_scale", man_path), "snapshot_scale");
  const std::string mask_ext = require_key(man, "mask_ext", man_path);
  const MaskMode mode = mask_mode_from_string(require_key(man, "mask_mode", man_path));

  for (int j = 0; j < d.snapshots; ++j) {
    const std::string snap_name = require_key(man, index_name("snapshot_", j, 3, ""), man_path);
    Image2D y = read_pgm((dir / snap_name).string());
    if (y.n_x() != d.n_x || y.n_y() != d.n_y)
      throw ConfigError("snapshot dims disagree with manifest: " + snap_name);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= scale;
    d.ys.push_back(std::move(y));

    MaskSchedule s;
    s.mode = mode;
    for (int k = 0; k < d.n_t; ++k) {
      const std::string mp = (dir / mask_name(j, k, mask_ext)).string();
      if (!fs::exists(mp)) throw DataError("missing mask plane: " + mp);
      Image2D plane = load_mask_plane(mp);
      if (plane.n_x() != d.n_x || plane.n_y() != d.n_y)
        throw ConfigError("mask plane dims disagree with manifest: " + mp);
      s.planes.push_back(std::move(plane));
    }
    d.schedules.push_back(std::move(s));
  }

  // Ground truth frames, when every referenced file still exists.
  std::vector<std::string> truth;
  bool complete = true;
  for (int i = 0; i < d.snapshots * d.n_t; ++i) {
    const auto it = man.find(index_name("truth_", i, 4, ""));
    if (it == man.end() || !fs::exists(it->second)) {
      complete = false;
      break;
    }
    truth.push_back(it->second);
  }
  if (complete && !truth.empty()) {
    if (d.color) {
      d.truth_color = load_color_cube(truth, 0, int(truth.size()));
      d.have_truth = d.truth_color.r.n_x() == d.n_x && d.truth_color.r.n_y() == d.n_y;
    } else {
      d.truth_gray = load_gray_cube(truth, 0, int(truth.size()));
      d.have_truth = d.truth_gray.n_x() == d.n_x && d.truth_gray.n_y() == d.n_y;
    }
  }
  return d;
}

double color_frame_psnr(const ColorCube& est, const ColorCube& truth, int k) {
  double acc = 0.0;
  const std::size_t fs = est.r.frame_size();
  const VideoCube* ec[3] = {&est.r, &est.g, &est.b};
  const VideoCube* tc[3] = {&truth.r, &truth.g, &truth.b};
  for (int c = 0; c < 3; ++c) {
    const double* a = ec[c]->frame(k);
    const double* b = tc[c]->frame(k);
    for (std::size_t i = 0; i < fs; ++i) {
      const double diff = a[i] - b[i];
      acc += diff * diff;
    }
  }
  const double m = acc / double(3 * fs);
  return m == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / m);
}

}  // namespace

void run_reconstruct(const RunConfig& cfg) {
  validate_solver_params(cfg);
  if (cfg.output_dir.empty()) throw ConfigError("output directory required");
  const SimData d = load_sim_dir(cfg);
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  const int workers = resolved_workers(cfg);
  const GapConfig gap_cfg = cfg.gap();
  const int total = d.snapshots * d.n_t;

  std::vector<double> psnrs;
  SolverTrace trace0;
  bool overlapped = false;
  double rel_mse = 0.0;
  double mean_psnr = 0.0;

  std::string ext = "." + cfg.frame_format;
  if (d.color) {
    if (ext == ".pgm") ext = ".ppm";  // color frames need a color format
    SolverTrace tr;
    ColorResult res = reconstruct_color(d.ys, d.schedules, d.pattern, gap_cfg, cfg.overlap,
                                        workers, &tr);
    trace0 = std::move(tr);
    overlapped = res.overlapped;
    for (int k = 0; k < total; ++k) {
      RgbImage f{res.video.r.frame_image(k), res.video.g.frame_image(k),
                 res.video.b.frame_image(k)};
      write_image_rgb(f, (out / index_name("frame_", k, 4, ext)).string());
    }
    if (d.have_truth) {
      double num = 0.0, den = 0.0;
      const VideoCube* ec[3] = {&res.video.r, &res.video.g, &res.video.b};
      const VideoCube* tc[3] = {&d.truth_color.r, &d.truth_color.g, &d.truth_color.b};
      for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < ec[c]->size(); ++i) {
          const double diff = (*ec[c])[i] - (*tc[c])[i];
          num += diff * diff;
          den += (*tc[c])[i] * (*tc[c])[i];
        }
      }
      rel_mse = den > 0 ? num / den : num;
      for (int k = 0; k < total; ++k) psnrs.push_back(color_frame_psnr(res.video, d.truth_color, k));
    }
  } else {
    std::vector<SolverTrace> traces;
    VideoCube est;
    if (cfg.overlap) {
      OverlapResult r = overlap_reconstruct(d.ys, d.schedules, gap_cfg, workers, &traces);
      est = std::move(r.video);
      overlapped = r.overlapped;
    } else {
      est = independent_reconstruct(d.ys, d.schedules, gap_cfg, workers, &traces,
                                    d.have_truth ? &d.truth_gray : nullptr);
    }
    if (!traces.empty()) trace0 = std::move(traces.front());
    for (int k = 0; k < total; ++k) {
      write_image_gray(est.frame_image(k), (out / index_name("frame_", k, 4, ext)).string(), 8);
    }
    if (d.have_truth) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < est.size(); ++i) {
        const double diff = est[i] - d.truth_gray[i];
        num += diff * diff;
        den += d.truth_gray[i] * d.truth_gray[i];
      }
      rel_mse = den > 0 ? num / den : num;
      for (int k = 0; k < total; ++k)
        psnrs.push_back(psnr(est.frame_image(k), d.truth_gray.frame_image(k), 1.0));
    }
  }

  if (d.have_truth) {
    double acc = 0.0;
    for (double p : psnrs) acc += std::isinf(p) ? 200.0 : p;  // cap the sentinel for the mean
    mean_psnr = psnrs.empty() ? 0.0 : acc / double(psnrs.size());
  } else {
    psnrs.assign(std::size_t(total), 0.0);
  }

  write_metrics_csv((out / "metrics.csv").string(), psnrs, d.have_truth);
  write_trace_csv(trace0, (out / "trace.csv").string());

  Manifest m;
  m.emplace_back("command", "reconstruct");
  m.emplace_back("input_dir", fs::absolute(cfg.input_dir).string());
  m.emplace_back("nx", std::to_string(d.n_x));
  m.emplace_back("ny", std::to_string(d.n_y));
  push_common(m, cfg);
  push_solver(m, cfg);
  m.emplace_back("overlapped", overlapped ? "1" : "0");
  m.emplace_back("frame_format", ext.substr(1));
  m.emplace_back("frames_out", std::to_string(total));
  if (d.have_truth) {
    m.emplace_back("mean_psnr", fmt(mean_psnr));
    m.emplace_back("rel_mse", fmt(rel_mse));
  }
  write_manifest((out / "manifest.txt").string(), m);
}

void run_compare_codes(const RunConfig& cfg) {
  validate_solver_params(cfg);
  if (cfg.output_dir.empty()) throw ConfigError("output directory required");
  const int needed = cfg.n_t * cfg.snapshots;
  const auto paths = input_frame_paths(cfg, needed);
  const VideoCube truth = load_gray_cube(paths, 0, needed);
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  const int workers = resolved_workers(cfg);
  const GapConfig gap_cfg = cfg.gap();

  const MaskMode modes[3] = {MaskMode::kShifted, MaskMode::kRandomBinary, MaskMode::kRandomGray};
  std::ofstream csv((out / "codes.csv").string());
  if (!csv) throw DataError("cannot open for writing: codes.csv");
  csv << "# cacti compare-codes v1\n";
  csv << "mode,frame,psnr\n";
  csv.precision(10);

  Manifest m;
  m.emplace_back("command", "compare-codes");
  m.emplace_back("nx", std::to_string(truth.n_x()));
  m.emplace_back("ny", std::to_string(truth.n_y()));
  push_common(m, cfg);
  push_solver(m, cfg);

  for (const MaskMode mode : modes) {
    RunConfig local = cfg;
    local.mask_mode = to_string(mode);
    std::vector<Image2D> ys;
    std::vector<MaskSchedule> ss;
    for (int j = 0; j < cfg.snapshots; ++j) {
      VideoCube block(truth.n_x(), truth.n_y(), cfg.n_t);
      for (int k = 0; k < cfg.n_t; ++k)
        block.set_frame(k, truth.frame_image(j * cfg.n_t + k));
      MaskSchedule s = make_schedule(truth.n_x(), truth.n_y(), cfg.n_t, mode,
                                     schedule_seed(local, j), cfg.mask_density);
      ys.push_back(forward(block, s, cfg.noise_sigma, noise_seed(local, j)).y);
      ss.push_back(std::move(s));
    }
    const VideoCube est = independent_reconstruct(ys, ss, gap_cfg, workers);
    double acc = 0.0;
    for (int k = 0; k < needed; ++k) {
      const double p = psnr(est.frame_image(k), truth.frame_image(k), 1.0);
      csv << to_string(mode) << "," << k << ",";
      if (std::isinf(p))
        csv << "inf";
      else
        csv << p;
      csv << "\n";
      acc += std::isinf(p) ? 200.0 : p;
    }
    m.emplace_back("mean_psnr_" + to_string(mode), fmt(acc / double(needed)));
  }
  csv.flush();
  if (!csv) throw DataError("write failed: codes.csv");
  write_manifest((out / "manifest.txt").string(), m);
}

void run_depth(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("output directory required");
  if (cfg.calibration.empty()) throw ConfigError("depth needs --calibration");
  if (cfg.depth_window < 3 || cfg.depth_window % 2 == 0)
    throw ConfigError("depth_window must be odd and >= 3");
  if (cfg.confidence_threshold < 0.0 || cfg.confidence_threshold > 1.0)
    throw ConfigError("confidence_threshold must be in [0,1]");
  const DepthCalibration cal = load_calibration_csv(cfg.calibration);

  const auto paths = input_frame_paths(cfg, 2);
  const VideoCube cube = load_gray_cube(paths, 0, int(paths.size()));
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  const FocusIndexMap idx = best_focus_index(cube, cfg.depth_window, cfg.refine_subframe);
  const DepthMap map = depth_from_index(idx, cal, cfg.confidence_threshold);

  write_depth_pgm(map, cal, (out / "depth.pgm").string());
  write_pgm(map.confidence, (out / "confidence.pgm").string(), 8);
  write_depth_region_csv(idx, map, cal, (out / "regions.csv").string());

  std::size_t valid = 0;
  for (double v : map.valid.values()) valid += v > 0.0 ? 1 : 0;

  Manifest m;
  m.emplace_back("command", "depth");
  m.emplace_back("input_dir", fs::absolute(cfg.input_dir).string());
  m.emplace_back("calibration", fs::absolute(cfg.calibration).string());
  m.emplace_back("frames_in", std::to_string(cube.n_t()));
  m.emplace_back("depth_window", std::to_string(cfg.depth_window));
  m.emplace_back("confidence_threshold", fmt(cfg.confidence_threshold));
  m.emplace_back("refine_subframe", cfg.refine_subframe ? "1" : "0");
  m.emplace_back("valid_fraction", fmt(double(valid) / double(map.valid.size())));
  write_manifest((out / "manifest.txt").string(), m);
}

int run_command(const std::string& name, const RunConfig& cfg) {
  try {
    if (name == "make-clip") run_make_clip(cfg);
    else if (name == "simulate") run_simulate(cfg);
    else if (name == "reconstruct") run_reconstruct(cfg);
    else if (name == "compare-codes") run_compare_codes(cfg);
    else if (name == "depth") run_depth(cfg);
    else throw ConfigError("unknown command: " + name);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cacti
