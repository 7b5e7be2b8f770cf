#pragma once

#include <string>
#include <vector>

#include "cacti/tensor.hpp"

namespace cacti {

struct RgbImage {
  Image2D r, g, b;
};

// File I/O for PGM (8/16-bit), PPM (8/16-bit) and PNG (8/16-bit gray or RGB).
// Samples are normalized to [0,1] on read; writers clamp to [0,1] and
// quantize. Image2D axes map to files as x = raster row, y = raster column.
//
// read_image_gray averages the channels of a color file; read_image_rgb
// replicates a gray file into all three channels.

Image2D read_pgm(const std::string& path);
void write_pgm(const Image2D& img, const std::string& path, int bits = 8);

RgbImage read_ppm(const std::string& path);
void write_ppm(const RgbImage& img, const std::string& path, int bits = 8);

Image2D read_png_gray(const std::string& path);
RgbImage read_png_rgb(const std::string& path);
void write_png_gray(const Image2D& img, const std::string& path);
void write_png_rgb(const RgbImage& img, const std::string& path);

// Extension-dispatched entry points (.pgm/.ppm/.png).
Image2D read_image_gray(const std::string& path);
RgbImage read_image_rgb(const std::string& path);
void write_image_gray(const Image2D& img, const std::string& path, int bits = 8);
void write_image_rgb(const RgbImage& img, const std::string& path);

// Plain numeric CSV matrix; line i holds row ix, comma separated over iy.
Image2D read_csv_matrix(const std::string& path);
void write_csv_matrix(const Image2D& img, const std::string& path);

// Sorted list of frame files (*.pgm, *.ppm, *.png) in a directory.
std::vector<std::string> list_frames(const std::string& dir);

std::string lower_extension(const std::string& path);

}  // namespace cacti
