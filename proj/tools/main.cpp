#include <CLI11.hpp>

#include <string>

#include "cacti/commands.hpp"

// Snapshot-camera toolkit CLI. Subcommands: make-clip, simulate, reconstruct,
// compare-codes, depth. Every flag mirrors a config key; --config loads the
// same keys from a flat key=value file, with flags taking precedence.

namespace {

void add_common_flags(CLI::App* cmd, cacti::RunConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input_dir, "input directory");
  cmd->add_option("-o,--output", cfg.output_dir, "output directory");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--workers", cfg.workers, "worker pool size (0 = hardware)");
}

void add_coding_flags(CLI::App* cmd, cacti::RunConfig& cfg) {
  cmd->add_option("--nt", cfg.n_t, "sub-frames per snapshot");
  cmd->add_option("--snapshots", cfg.snapshots, "number of coded snapshots");
  cmd->add_option("--mask-mode", cfg.mask_mode, "shifted | random-binary | random-gray");
  cmd->add_option("--noise-sigma", cfg.noise_sigma, "measurement noise sigma");
  cmd->add_option("--mask-density", cfg.mask_density, "Bernoulli density of binary masks");
  cmd->add_flag("--color,!--gray", cfg.color, "Bayer color pipeline");
  cmd->add_option("--bayer-pattern", cfg.bayer_pattern, "RGGB | GRBG | GBRG | BGGR");
}

void add_solver_flags(CLI::App* cmd, cacti::RunConfig& cfg) {
  cmd->add_option("--iters", cfg.iters, "solver iterations");
  cmd->add_option("--m-star", cfg.m_star, "lambda schedule rank (0 = auto)");
  cmd->add_option("--weight-a", cfg.weight_a, "group weight base a");
  cmd->add_option("--levels", cfg.levels, "wavelet decomposition levels");
  cmd->add_option("--bx", cfg.b_x, "group block size in x");
  cmd->add_option("--by", cfg.b_y, "group block size in y");
  cmd->add_option("--bt", cfg.b_t, "group block size in t (0 = round(nt/4))");
  cmd->add_flag("--overlap,!--no-overlap", cfg.overlap, "temporal overlap inversion");
  cmd->add_option("--frame-format", cfg.frame_format, "output frame format (pgm/ppm/png)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded-aperture snapshot video toolkit"};
  app.require_subcommand(1);

  cacti::RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file")
      ->check(CLI::ExistingFile);

  auto* make_clip = app.add_subcommand("make-clip", "write a procedural test clip");
  add_common_flags(make_clip, cfg);
  make_clip->add_option("--frames", cfg.frames, "frame count");
  make_clip->add_option("--size-x", cfg.size_x, "frame rows");
  make_clip->add_option("--size-y", cfg.size_y, "frame columns");
  make_clip->add_flag("--color,!--gray", cfg.color, "color clip");

  auto* simulate = app.add_subcommand("simulate", "code a frame sequence into snapshots");
  add_common_flags(simulate, cfg);
  add_coding_flags(simulate, cfg);
  add_solver_flags(simulate, cfg);
  bool and_reconstruct = false;
  simulate->add_flag("--and-reconstruct", and_reconstruct,
                     "reconstruct right after simulating");

  auto* reconstruct = app.add_subcommand("reconstruct", "invert coded snapshots");
  add_common_flags(reconstruct, cfg);
  add_coding_flags(reconstruct, cfg);
  add_solver_flags(reconstruct, cfg);

  auto* compare = app.add_subcommand("compare-codes",
                                     "PSNR of shifted vs random-binary vs random-gray coding");
  add_common_flags(compare, cfg);
  add_coding_flags(compare, cfg);
  add_solver_flags(compare, cfg);

  auto* depth = app.add_subcommand("depth", "depth map from focus-swept frames");
  add_common_flags(depth, cfg);
  depth->add_option("--calibration", cfg.calibration, "frame->depth CSV table");
  depth->add_option("--window", cfg.depth_window, "sharpness window (odd)");
  depth->add_option("--confidence-threshold", cfg.confidence_threshold,
                    "valid-pixel confidence gate");
  depth->add_flag("--refine-subframe", cfg.refine_subframe, "parabolic sub-frame argmax");

  // Two-pass parse so file values load first and flags override them.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (!config_path.empty()) {
    cacti::RunConfig from_file;
    try {
      from_file = cacti::load_run_config(config_path);
    } catch (const cacti::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    cfg = from_file;
    try {
      app.clear();
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? 0 : 2;
    }
  }

  std::string name;
  for (auto* sub : {make_clip, simulate, reconstruct, compare, depth}) {
    if (sub->parsed()) name = sub->get_name();
  }
  if (name == "simulate" && and_reconstruct) cfg.mode = "simulate+reconstruct";
  else if (!name.empty()) cfg.mode = name;

  return cacti::run_command(name, cfg);
}
