#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cacti/gap.hpp"

namespace cacti {

// Resolved parameters for one CLI run. Config files are flat key=value text
// (same keys as the CLI flags); flags override file values. Manifests written
// next to the outputs use the same format and are sufficient to re-run a
// command bit-identically.
struct RunConfig {
  std::string mode = "simulate";  // simulate | reconstruct | simulate+reconstruct | depth
  std::string input_dir;
  std::string output_dir;
  std::string calibration;

  int n_t = 8;
  int snapshots = 1;
  int frames = 24;  // make-clip only
  int size_x = 256;
  int size_y = 256;

  std::string mask_mode = "shifted";
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;
  double mask_density = 0.5;

  int iters = 50;
  int m_star = 0;  // 0 -> default rule
  double weight_a = 1.5;
  int levels = 3;
  int b_x = 2;
  int b_y = 2;
  int b_t = 0;  // 0 -> round(n_t/4)

  bool overlap = false;
  bool color = false;
  std::string bayer_pattern = "RGGB";

  int depth_window = 7;
  double confidence_threshold = 0.1;
  bool refine_subframe = false;

  int workers = 0;  // 0 -> hardware concurrency
  std::string frame_format = "pgm";  // pgm | png (gray), ppm | png (color)

  GapConfig gap() const;
};

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig load_run_config(const std::string& path);

std::map<std::string, std::string> read_manifest(const std::string& path);

// Commands. Each throws ConfigError / DataError on failure and writes its
// manifest only after every other artifact succeeded.
void run_make_clip(const RunConfig& cfg);
void run_simulate(const RunConfig& cfg);
void run_reconstruct(const RunConfig& cfg);
void run_compare_codes(const RunConfig& cfg);
void run_depth(const RunConfig& cfg);

// Exit-code wrapper: 0 ok, 2 config error, 3 data error.
int run_command(const std::string& name, const RunConfig& cfg);

}  // namespace cacti
