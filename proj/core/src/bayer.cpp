#include "cacti/bayer.hpp"

#include <algorithm>

namespace cacti {

BayerPattern bayer_pattern_from_string(const std::string& s) {
  if (s == "RGGB" || s == "rggb") return BayerPattern::kRGGB;
  if (s == "GRBG" || s == "grbg") return BayerPattern::kGRBG;
  if (s == "GBRG" || s == "gbrg") return BayerPattern::kGBRG;
  if (s == "BGGR" || s == "bggr") return BayerPattern::kBGGR;
  throw ConfigError("unknown bayer pattern: " + s);
}

std::string to_string(BayerPattern p) {
  switch (p) {
    case BayerPattern::kRGGB: return "RGGB";
    case BayerPattern::kGRBG: return "GRBG";
    case BayerPattern::kGBRG: return "GBRG";
    case BayerPattern::kBGGR: return "BGGR";
  }
  throw ConfigError("bad bayer pattern value");
}

SiteOffset channel_site(BayerPattern p, int channel) {
  // {R, G1, G2, B} per pattern.
  static constexpr SiteOffset kSites[4][4] = {
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}},  // RGGB
      {{0, 1}, {0, 0}, {1, 1}, {1, 0}},  // GRBG
      {{1, 0}, {0, 0}, {1, 1}, {0, 1}},  // GBRG
      {{1, 1}, {0, 1}, {1, 0}, {0, 0}},  // BGGR
  };
  if (channel < 0 || channel > 3) throw ConfigError("bayer channel must be 0..3");
  return kSites[int(p)][channel];
}

const Image2D& BayerQuad::channel(int c) const {
  switch (c) {
    case kChanR: return r;
    case kChanG1: return g1;
    case kChanG2: return g2;
    case kChanB: return b;
  }
  throw ConfigError("bayer channel must be 0..3");
}

Image2D& BayerQuad::channel(int c) {
  return const_cast<Image2D&>(static_cast<const BayerQuad*>(this)->channel(c));
}

namespace {

void check_even(int n_x, int n_y) {
  if (n_x % 2 != 0 || n_y % 2 != 0)
    throw DimensionError("bayer operations need even dimensions");
}

}  // namespace

BayerQuad bayer_split(const Image2D& mosaic, BayerPattern p) {
  check_even(mosaic.n_x(), mosaic.n_y());
  const int hx = mosaic.n_x() / 2;
  const int hy = mosaic.n_y() / 2;
  BayerQuad q{Image2D(hx, hy), Image2D(hx, hy), Image2D(hx, hy), Image2D(hx, hy)};
  for (int c = 0; c < 4; ++c) {
    const SiteOffset s = channel_site(p, c);
    Image2D& plane = q.channel(c);
    for (int j = 0; j < hy; ++j)
      for (int i = 0; i < hx; ++i) plane.at(i, j) = mosaic.at(2 * i + s.dx, 2 * j + s.dy);
  }
  return q;
}

Image2D bayer_merge(const BayerQuad& q, BayerPattern p) {
  if (!q.r.same_shape(q.g1) || !q.r.same_shape(q.g2) || !q.r.same_shape(q.b))
    throw DimensionError("bayer_merge: quarter plane shape mismatch");
  Image2D mosaic(q.r.n_x() * 2, q.r.n_y() * 2);
  for (int c = 0; c < 4; ++c) {
    const SiteOffset s = channel_site(p, c);
    const Image2D& plane = q.channel(c);
    for (int j = 0; j < plane.n_y(); ++j)
      for (int i = 0; i < plane.n_x(); ++i) mosaic.at(2 * i + s.dx, 2 * j + s.dy) = plane.at(i, j);
  }
  return mosaic;
}

RgbImage demosaic(const Image2D& mosaic, BayerPattern p) {
  check_even(mosaic.n_x(), mosaic.n_y());
  const int n_x = mosaic.n_x();
  const int n_y = mosaic.n_y();
  const SiteOffset sr = channel_site(p, kChanR);
  const SiteOffset sb = channel_site(p, kChanB);

  double lo = mosaic[0], hi = mosaic[0];
  for (double v : mosaic.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  const auto m = [&](int i, int j) { return mosaic.at(reflect_index(i, n_x), reflect_index(j, n_y)); };

  // Red or blue plane: native value at its own sites, axis average at green
  // sites sharing a row or column parity, diagonal average at the opposite
  // color's sites.
  const auto interp_rb = [&](int i, int j, SiteOffset s) {
    const int pi = i & 1, pj = j & 1;
    if (pi == s.dx && pj == s.dy) return mosaic.at(i, j);
    if (pi == s.dx) return 0.5 * (m(i, j - 1) + m(i, j + 1));
    if (pj == s.dy) return 0.5 * (m(i - 1, j) + m(i + 1, j));
    return 0.25 * (m(i - 1, j - 1) + m(i - 1, j + 1) + m(i + 1, j - 1) + m(i + 1, j + 1));
  };

  RgbImage out{Image2D(n_x, n_y), Image2D(n_x, n_y), Image2D(n_x, n_y)};
  for (int j = 0; j < n_y; ++j) {
    for (int i = 0; i < n_x; ++i) {
      const int pi = i & 1, pj = j & 1;
      const bool green_site = !((pi == sr.dx && pj == sr.dy) || (pi == sb.dx && pj == sb.dy));
      const double g = green_site
                           ? mosaic.at(i, j)
                           : 0.25 * (m(i - 1, j) + m(i + 1, j) + m(i, j - 1) + m(i, j + 1));
      out.r.at(i, j) = std::clamp(interp_rb(i, j, sr), lo, hi);
      out.g.at(i, j) = std::clamp(g, lo, hi);
      out.b.at(i, j) = std::clamp(interp_rb(i, j, sb), lo, hi);
    }
  }
  return out;
}

VideoCube mosaic_video(const ColorCube& c, BayerPattern p) {
  if (!c.r.same_shape(c.g) || !c.r.same_shape(c.b))
    throw DimensionError("mosaic_video: channel shape mismatch");
  check_even(c.r.n_x(), c.r.n_y());
  const SiteOffset sr = channel_site(p, kChanR);
  const SiteOffset sb = channel_site(p, kChanB);
  VideoCube out(c.r.n_x(), c.r.n_y(), c.r.n_t());
  for (int k = 0; k < c.r.n_t(); ++k) {
    for (int j = 0; j < c.r.n_y(); ++j) {
      for (int i = 0; i < c.r.n_x(); ++i) {
        const int pi = i & 1, pj = j & 1;
        double v;
        if (pi == sr.dx && pj == sr.dy) {
          v = c.r.at(i, j, k);
        } else if (pi == sb.dx && pj == sb.dy) {
          v = c.b.at(i, j, k);
        } else {
          v = c.g.at(i, j, k);
        }
        out.at(i, j, k) = v;
      }
    }
  }
  return out;
}

}  // namespace cacti
