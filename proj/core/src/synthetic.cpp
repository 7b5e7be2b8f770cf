#include "cacti/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cacti/coding.hpp"
#include "cacti/rng.hpp"

namespace cacti {

namespace {

double lattice_value(std::uint64_t seed, int octave, long long cx, long long cy) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(std::uint64_t(octave) * 0x9d2c5680ULL));
  h = splitmix64(h ^ std::uint64_t(cx) * 0x85ebca6bULL);
  h = splitmix64(h ^ std::uint64_t(cy) * 0xc2b2ae35ULL);
  return double(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;  // [-1, 1)
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// Multi-octave value noise, amplitude halving per octave (~1/f spectrum).
double fractal_noise(std::uint64_t seed, double x, double y) {
  double acc = 0.0;
  double amp = 1.0;
  double cell = 32.0;
  for (int o = 0; o < 5; ++o) {
    const double u = x / cell;
    const double v = y / cell;
    const auto fx = std::floor(u), fy = std::floor(v);
    const long long cx = (long long)fx, cy = (long long)fy;
    const double tx = smoothstep(u - fx);
    const double ty = smoothstep(v - fy);
    const double v00 = lattice_value(seed, o, cx, cy);
    const double v10 = lattice_value(seed, o, cx + 1, cy);
    const double v01 = lattice_value(seed, o, cx, cy + 1);
    const double v11 = lattice_value(seed, o, cx + 1, cy + 1);
    acc += amp * ((v00 * (1 - tx) + v10 * tx) * (1 - ty) + (v01 * (1 - tx) + v11 * tx) * ty);
    amp *= 0.55;
    cell *= 0.5;
  }
  return acc;
}

struct Sprite {
  double cx, cy;        // start center
  double vx, vy;        // velocity, px/frame
  double rx, ry;        // radii
  double phase, freq;   // internal stripe texture
  double tone;          // base intensity offset
  double tint_r, tint_g, tint_b;
  bool hard;            // hard-edged square instead of soft ellipse
};

std::vector<Sprite> make_sprites(int n_x, int n_y, std::uint64_t seed) {
  Rng rng = Rng(seed).derive(7);
  std::vector<Sprite> sp;
  const int count = 6;
  for (int i = 0; i < count; ++i) {
    Sprite s;
    s.cx = rng.uniform01() * n_x;
    s.cy = rng.uniform01() * n_y;
    s.vx = (rng.uniform01() - 0.5) * 6.0;
    s.vy = (rng.uniform01() - 0.5) * 6.0;
    s.rx = n_x * (0.05 + 0.10 * rng.uniform01());
    s.ry = n_y * (0.05 + 0.10 * rng.uniform01());
    s.phase = rng.uniform01() * 2.0 * std::numbers::pi;
    s.freq = 0.25 + 0.75 * rng.uniform01();
    s.tone = 0.3 + 0.5 * rng.uniform01();
    s.tint_r = 0.4 + 0.6 * rng.uniform01();
    s.tint_g = 0.4 + 0.6 * rng.uniform01();
    s.tint_b = 0.4 + 0.6 * rng.uniform01();
    s.hard = (i % 3 == 2);
    sp.push_back(s);
  }
  return sp;
}

// Scene luminance at (ix, iy) in frame k, plus the sprite tint that wins
// there (background tint is neutral).
void sample_scene(std::uint64_t seed, const std::vector<Sprite>& sprites, int n_x, int n_y,
                  int k, int ix, int iy, double* luma, double* tr, double* tg, double* tb) {
  // background pans slowly
  const double bg = fractal_noise(seed, ix + 0.7 * k, iy + 1.3 * k);
  double v = 0.5 + 0.28 * bg;
  double cr = 1.0, cg = 1.0, cb = 1.0;
  for (const Sprite& s : sprites) {
    const double px = s.cx + s.vx * k;
    const double py = s.cy + s.vy * k;
    const double dx = (ix - px) / s.rx;
    const double dy = (iy - py) / s.ry;
    double cover = 0.0;
    if (s.hard) {
      cover = (std::abs(dx) < 1.0 && std::abs(dy) < 1.0) ? 1.0 : 0.0;
    } else {
      const double d2 = dx * dx + dy * dy;
      if (d2 < 1.0) cover = smoothstep(1.0 - d2);
    }
    if (cover <= 0.0) continue;
    const double stripes =
        0.5 + 0.5 * std::sin(s.phase + s.freq * (0.9 * (ix - px) + 0.45 * (iy - py)));
    const double sv = s.tone * (0.55 + 0.45 * stripes);
    v = v * (1.0 - cover) + sv * cover;
    cr = cr * (1.0 - cover) + s.tint_r * cover;
    cg = cg * (1.0 - cover) + s.tint_g * cover;
    cb = cb * (1.0 - cover) + s.tint_b * cover;
  }
  *luma = std::clamp(0.03 + 0.94 * v, 0.03, 0.97);
  *tr = cr;
  *tg = cg;
  *tb = cb;
}

}  // namespace

VideoCube make_test_clip(int n_x, int n_y, int frames, std::uint64_t seed) {
  const auto sprites = make_sprites(n_x, n_y, seed);
  VideoCube out(n_x, n_y, frames);
  for (int k = 0; k < frames; ++k) {
    for (int iy = 0; iy < n_y; ++iy) {
      for (int ix = 0; ix < n_x; ++ix) {
        double v, tr, tg, tb;
        sample_scene(seed, sprites, n_x, n_y, k, ix, iy, &v, &tr, &tg, &tb);
        out.at(ix, iy, k) = v;
      }
    }
  }
  return out;
}

ColorCube make_test_clip_color(int n_x, int n_y, int frames, std::uint64_t seed) {
  const auto sprites = make_sprites(n_x, n_y, seed);
  ColorCube out{VideoCube(n_x, n_y, frames), VideoCube(n_x, n_y, frames),
                VideoCube(n_x, n_y, frames)};
  for (int k = 0; k < frames; ++k) {
    for (int iy = 0; iy < n_y; ++iy) {
      for (int ix = 0; ix < n_x; ++ix) {
        double v, tr, tg, tb;
        sample_scene(seed, sprites, n_x, n_y, k, ix, iy, &v, &tr, &tg, &tb);
        out.r.at(ix, iy, k) = std::clamp(v * tr, 0.0, 1.0);
        out.g.at(ix, iy, k) = std::clamp(v * tg, 0.0, 1.0);
        out.b.at(ix, iy, k) = std::clamp(v * tb, 0.0, 1.0);
      }
    }
  }
  return out;
}

ThreePlaneScene make_three_plane_scene(int n_x, int n_y, int n_t, std::uint64_t seed,
                                       double blur_gain) {
  if (n_t < 4) throw ConfigError("three-plane scene needs n_t >= 4");
  ThreePlaneScene scene;
  scene.sharp = VideoCube(n_x, n_y, n_t);
  scene.depth_map = Image2D(n_x, n_y);
  scene.truth_frame = Image2D(n_x, n_y);
  scene.focus_of_frame.resize(std::size_t(n_t));
  for (int k = 0; k < n_t; ++k) scene.focus_of_frame[std::size_t(k)] = double(k);

  // Band depths on interior frames so the sharpness peak is never clipped.
  const double depths[3] = {1.0, std::round((n_t - 1) / 2.0), double(n_t - 2)};

  Rng rng = Rng(seed).derive(11);
  Image2D texture(n_x, n_y);
  for (int iy = 0; iy < n_y; ++iy) {
    for (int ix = 0; ix < n_x; ++ix) {
      // checker + noise: strong high-frequency content for the focus measure
      const double checker = (((ix / 3) + (iy / 3)) % 2 == 0) ? 0.75 : 0.25;
      texture.at(ix, iy) = std::clamp(checker + 0.2 * (rng.uniform01() - 0.5), 0.0, 1.0);
    }
  }
  for (int iy = 0; iy < n_y; ++iy) {
    const int band = std::min(2, iy * 3 / n_y);
    for (int ix = 0; ix < n_x; ++ix) {
      scene.depth_map.at(ix, iy) = depths[band];
      scene.truth_frame.at(ix, iy) = depths[band];  // focus[k] = k
    }
  }
  for (int k = 0; k < n_t; ++k) scene.sharp.set_frame(k, texture);
  scene.swept = focus_blur(scene.sharp, scene.depth_map, scene.focus_of_frame, blur_gain);
  return scene;
}

}  // namespace cacti
