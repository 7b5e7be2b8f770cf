#pragma once

#include <string>

#include "cacti/image_io.hpp"
#include "cacti/tensor.hpp"

namespace cacti {

// 2x2 color filter tile; the letters read row 0 then row 1, x = row index.
enum class BayerPattern { kRGGB, kGRBG, kGBRG, kBGGR };

BayerPattern bayer_pattern_from_string(const std::string& s);
std::string to_string(BayerPattern p);

// Channel indices for the mosaiced components.
enum BayerChannel { kChanR = 0, kChanG1 = 1, kChanG2 = 2, kChanB = 3 };

// Offset of a channel's site inside the 2x2 tile (dx = row, dy = column).
// G1 is the green sample in tile row 0, G2 the one in tile row 1.
struct SiteOffset {
  int dx = 0;
  int dy = 0;
};
SiteOffset channel_site(BayerPattern p, int channel);

struct BayerQuad {
  Image2D r, g1, g2, b;
  const Image2D& channel(int c) const;
  Image2D& channel(int c);
};

// Subsample the mosaic into four quarter-size planes. Lossless:
// bayer_merge(bayer_split(m)) == m exactly.
BayerQuad bayer_split(const Image2D& mosaic, BayerPattern p);
Image2D bayer_merge(const BayerQuad& q, BayerPattern p);

// Bilinear interpolation of the missing color samples, reflective boundary.
// Native-site samples pass through untouched; outputs are convex combinations
// of mosaic samples and are clamped to the mosaic's value range.
RgbImage demosaic(const Image2D& mosaic, BayerPattern p);

struct ColorCube {
  VideoCube r, g, b;
  int n_t() const { return r.n_t(); }
};

// Scene-to-sensor step: sample each RGB frame at its Bayer sites into a
// single-plane mosaic video.
VideoCube mosaic_video(const ColorCube& c, BayerPattern p);

}  // namespace cacti
