#include "cacti/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cacti {

namespace {

int quantize(double v, int maxval) {
  v = std::clamp(v, 0.0, 1.0);
  return int(std::lround(v * maxval));
}

// Skips whitespace and '#' comment lines in a netpbm header.
int next_header_int(std::istream& in, const std::string& path) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw DataError("truncated netpbm header: " + path);
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else {
      break;
    }
  }
  int v = 0;
  in >> v;
  if (!in) throw DataError("bad netpbm header: " + path);
  return v;
}

struct PnmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
};

PnmHeader read_pnm_header(std::istream& in, const char* magic, const std::string& path) {
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != magic[0] || m1 != magic[1])
    throw DataError(std::string("expected ") + magic + " file: " + path);
  PnmHeader h;
  h.width = next_header_int(in, path);
  h.height = next_header_int(in, path);
  h.maxval = next_header_int(in, path);
  if (h.width <= 0 || h.height <= 0 || h.maxval <= 0 || h.maxval > 65535)
    throw DataError("bad netpbm dimensions: " + path);
  in.get();  // single whitespace before raster
  return h;
}

std::vector<double> read_pnm_raster(std::istream& in, const PnmHeader& h, int samples,
                                    const std::string& path) {
  const std::size_t count = std::size_t(h.width) * h.height * samples;
  const bool wide = h.maxval > 255;
  std::vector<unsigned char> raw(count * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
  if (std::size_t(in.gcount()) != raw.size()) throw DataError("truncated raster: " + path);
  std::vector<double> out(count);
  const double scale = 1.0 / h.maxval;
  if (wide) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = double((raw[2 * i] << 8) | raw[2 * i + 1]) * scale;  // big-endian
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) out[i] = double(raw[i]) * scale;
  }
  return out;
}

void write_pnm_raster(std::ostream& out, const std::vector<double>& samples, int maxval) {
  if (maxval > 255) {
    std::vector<unsigned char> raw(samples.size() * 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const int q = quantize(samples[i], maxval);
      raw[2 * i] = (unsigned char)(q >> 8);
      raw[2 * i + 1] = (unsigned char)(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
  } else {
    std::vector<unsigned char> raw(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
      raw[i] = (unsigned char)quantize(samples[i], maxval);
    out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

int bits_to_maxval(int bits) {
  if (bits == 8) return 255;
  if (bits == 16) return 65535;
  throw ConfigError("image bit depth must be 8 or 16");
}

// libpng glue. Reads any gray/palette/rgb(+alpha) file at 8 or 16 bits into
// interleaved normalized doubles with `channels` = 1 or 3.
std::vector<double> png_read_samples(const std::string& path, int channels, int& width,
                                     int& height) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw DataError("cannot open for reading: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (fp) std::fclose(fp);
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("libpng init failed: " + path);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError("libpng read error: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  if (channels == 1) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  } else {
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);

  width = int(png_get_image_width(png, info));
  height = int(png_get_image_height(png, info));
  const int depth = png_get_bit_depth(png, info);
  const int got_channels = png_get_channels(png, info);
  if (got_channels != channels) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError("unexpected png channel count: " + path);
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<unsigned char> raw(rowbytes * std::size_t(height));
  std::vector<png_bytep> rows(std::size_t(height));
  for (int r = 0; r < height; ++r) rows[std::size_t(r)] = raw.data() + rowbytes * std::size_t(r);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  std::vector<double> out(std::size_t(width) * height * channels);
  if (depth == 16) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = double((raw[2 * i] << 8) | raw[2 * i + 1]) / 65535.0;  // network order
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = double(raw[i]) / 255.0;
  }
  return out;
}

void png_write_samples(const std::string& path, const std::vector<double>& samples, int width,
                       int height, int channels) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw DataError("cannot open for writing: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (fp) std::fclose(fp);
    png_destroy_write_struct(&png, &info);
    throw DataError("libpng init failed: " + path);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw DataError("libpng write error: " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  std::vector<unsigned char> raw(std::size_t(width) * height * channels);
  for (std::size_t i = 0; i < raw.size(); ++i)
    raw[i] = (unsigned char)quantize(samples[i], 255);
  std::vector<png_bytep> rows(std::size_t(height));
  for (int r = 0; r < height; ++r)
    rows[std::size_t(r)] = raw.data() + std::size_t(r) * std::size_t(width) * channels;
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return ext;
}

Image2D read_pgm(const std::string& path) {
  auto in = open_in(path);
  const PnmHeader h = read_pnm_header(in, "P5", path);
  const auto samples = read_pnm_raster(in, h, 1, path);
  Image2D img(h.height, h.width);
  for (int r = 0; r < h.height; ++r)
    for (int c = 0; c < h.width; ++c)
      img.at(r, c) = samples[std::size_t(r) * h.width + c];
  return img;
}

void write_pgm(const Image2D& img, const std::string& path, int bits) {
  const int maxval = bits_to_maxval(bits);
  auto out = open_out(path);
  out << "P5\n" << img.n_y() << " " << img.n_x() << "\n" << maxval << "\n";
  std::vector<double> samples(img.size());
  for (int r = 0; r < img.n_x(); ++r)
    for (int c = 0; c < img.n_y(); ++c)
      samples[std::size_t(r) * img.n_y() + c] = img.at(r, c);
  write_pnm_raster(out, samples, maxval);
  if (!out) throw DataError("write failed: " + path);
}

RgbImage read_ppm(const std::string& path) {
  auto in = open_in(path);
  const PnmHeader h = read_pnm_header(in, "P6", path);
  const auto samples = read_pnm_raster(in, h, 3, path);
  RgbImage img{Image2D(h.height, h.width), Image2D(h.height, h.width),
               Image2D(h.height, h.width)};
  for (int r = 0; r < h.height; ++r) {
    for (int c = 0; c < h.width; ++c) {
      const std::size_t base = 3 * (std::size_t(r) * h.width + c);
      img.r.at(r, c) = samples[base];
      img.g.at(r, c) = samples[base + 1];
      img.b.at(r, c) = samples[base + 2];
    }
  }
  return img;
}

void write_ppm(const RgbImage& img, const std::string& path, int bits) {
  if (!img.r.same_shape(img.g) || !img.r.same_shape(img.b))
    throw DimensionError("write_ppm: channel shape mismatch");
  const int maxval = bits_to_maxval(bits);
  auto out = open_out(path);
  out << "P6\n" << img.r.n_y() << " " << img.r.n_x() << "\n" << maxval << "\n";
  std::vector<double> samples(img.r.size() * 3);
  for (int r = 0; r < img.r.n_x(); ++r) {
    for (int c = 0; c < img.r.n_y(); ++c) {
      const std::size_t base = 3 * (std::size_t(r) * img.r.n_y() + c);
      samples[base] = img.r.at(r, c);
      samples[base + 1] = img.g.at(r, c);
      samples[base + 2] = img.b.at(r, c);
    }
  }
  write_pnm_raster(out, samples, maxval);
  if (!out) throw DataError("write failed: " + path);
}

Image2D read_png_gray(const std::string& path) {
  int w = 0, h = 0;
  const auto samples = png_read_samples(path, 1, w, h);
  Image2D img(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) img.at(r, c) = samples[std::size_t(r) * w + c];
  return img;
}

RgbImage read_png_rgb(const std::string& path) {
  int w = 0, h = 0;
  const auto samples = png_read_samples(path, 3, w, h);
  RgbImage img{Image2D(h, w), Image2D(h, w), Image2D(h, w)};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t base = 3 * (std::size_t(r) * w + c);
      img.r.at(r, c) = samples[base];
      img.g.at(r, c) = samples[base + 1];
      img.b.at(r, c) = samples[base + 2];
    }
  }
  return img;
}

void write_png_gray(const Image2D& img, const std::string& path) {
  std::vector<double> samples(img.size());
  for (int r = 0; r < img.n_x(); ++r)
    for (int c = 0; c < img.n_y(); ++c)
      samples[std::size_t(r) * img.n_y() + c] = img.at(r, c);
  png_write_samples(path, samples, img.n_y(), img.n_x(), 1);
}

void write_png_rgb(const RgbImage& img, const std::string& path) {
  if (!img.r.same_shape(img.g) || !img.r.same_shape(img.b))
    throw DimensionError("write_png_rgb: channel shape mismatch");
  std::vector<double> samples(img.r.size() * 3);
  for (int r = 0; r < img.r.n_x(); ++r) {
    for (int c = 0; c < img.r.n_y(); ++c) {
      const std::size_t base = 3 * (std::size_t(r) * img.r.n_y() + c);
      samples[base] = img.r.at(r, c);
      samples[base + 1] = img.g.at(r, c);
      samples[base + 2] = img.b.at(r, c);
    }
  }
  png_write_samples(path, samples, img.r.n_y(), img.r.n_x(), 3);
}

Image2D read_image_gray(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png_gray(path);
  if (ext == ".ppm") {
    const RgbImage rgb = read_ppm(path);
    Image2D img(rgb.r.n_x(), rgb.r.n_y());
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = (rgb.r[i] + rgb.g[i] + rgb.b[i]) / 3.0;
    return img;
  }
  throw DataError("unsupported gray image format: " + path);
}

RgbImage read_image_rgb(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".ppm") return read_ppm(path);
  if (ext == ".png") return read_png_rgb(path);
  if (ext == ".pgm") {
    Image2D g = read_pgm(path);
    return RgbImage{g, g, g};
  }
  throw DataError("unsupported color image format: " + path);
}

void write_image_gray(const Image2D& img, const std::string& path, int bits) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    write_pgm(img, path, bits);
  } else if (ext == ".png") {
    write_png_gray(img, path);
  } else {
    throw ConfigError("unsupported gray output format: " + path);
  }
}

void write_image_rgb(const RgbImage& img, const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".ppm") {
    write_ppm(img, path);
  } else if (ext == ".png") {
    write_png_rgb(img, path);
  } else {
    throw ConfigError("unsupported color output format: " + path);
  }
}

Image2D read_csv_matrix(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty csv matrix: " + path);
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw DataError("ragged csv matrix: " + path);
  Image2D img(int(rows.size()), int(cols));
  for (int i = 0; i < img.n_x(); ++i)
    for (int j = 0; j < img.n_y(); ++j) img.at(i, j) = rows[std::size_t(i)][std::size_t(j)];
  return img;
}

void write_csv_matrix(const Image2D& img, const std::string& path) {
  auto out = open_out(path);
  out.precision(17);
  for (int i = 0; i < img.n_x(); ++i) {
    for (int j = 0; j < img.n_y(); ++j) {
      if (j) out << ",";
      out << img.at(i, j);
    }
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::string> list_frames(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower_extension(e.path().string());
    if (ext == ".pgm" || ext == ".ppm" || ext == ".png") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cacti
