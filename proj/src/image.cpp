// Copyright 2026 The synthpaste Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthpaste/image.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>

#include "synthpaste/error.hpp"

namespace synthpaste {

Image::Image(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != byte_count(width, height)) {
    throw DecodeError("pixel buffer size does not match " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
}

Image Image::crop(const Rect& r) const {
  Image out(r.w, r.h);
  const std::size_t n = static_cast<std::size_t>(r.w) * kChannels;
  for (int y = 0; y < r.h; ++y) std::memcpy(out.row(y), pixel(r.x, r.y + y), n);
  return out;
}

void Image::paste(const Image& src, int x, int y) {
  const std::size_t n = src.stride();
  for (int sy = 0; sy < src.height(); ++sy) std::memcpy(pixel(x, y + sy), src.row(sy), n);
}

namespace {

struct PngReadBuffer {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void png_read_callback(png_structp png, png_bytep out, png_size_t count) {
  auto* buf = static_cast<PngReadBuffer*>(png_get_io_ptr(png));
  if (buf->offset + count > buf->data.size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, buf->data.data() + buf->offset, count);
  buf->offset += count;
}

void png_error_callback(png_structp png, png_const_charp message) {
  auto* msg = static_cast<std::string*>(png_get_error_ptr(png));
  if (msg) *msg = message;
  png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

bool is_png(std::span<const std::uint8_t> d) {
  return d.size() >= 8 && png_sig_cmp(d.data(), 0, 8) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> d) {
  return d.size() >= 3 && d[0] == 0xFF && d[1] == 0xD8 && d[2] == 0xFF;
}

Image decode_png(std::span<const std::uint8_t> encoded) {
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_callback,
                                           png_warning_callback);
  if (!png) throw DecodeError("libpng: cannot allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw DecodeError("libpng: cannot allocate info struct");
  }
  PngReadBuffer buf{encoded, 0};
  // Declared before setjmp so longjmp does not skip their destruction.
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DecodeError("PNG decode failed: " + message);
  }
  png_set_read_fn(png, &buf, png_read_callback);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != static_cast<png_size_t>(width) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DecodeError("unsupported PNG pixel layout");
  }
  pixels.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

Image decode_jpeg(std::span<const std::uint8_t> encoded) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  std::vector<std::uint8_t> pixels;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw DecodeError(std::string("JPEG decode failed: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, encoded.data(), static_cast<unsigned long>(encoded.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  const auto width = static_cast<int>(cinfo.output_width);
  const auto height = static_cast<int>(cinfo.output_height);
  pixels.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return Image(width, height, std::move(pixels));
}

void png_write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_callback(png_structp) {}

}  // namespace

Image decode_image(std::span<const std::uint8_t> encoded) {
  if (is_png(encoded)) return decode_png(encoded);
  if (is_jpeg(encoded)) return decode_jpeg(encoded);
  throw DecodeError("unrecognized image format (expected PNG or JPEG)");
}

Image read_image(const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file_bytes(path);
  } catch (const IoError& e) {
    throw DecodeError(e.what());
  }
  try {
    return decode_image(bytes);
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  std::vector<std::uint8_t> out;
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_callback,
                                            png_warning_callback);
  if (!png) throw IoError("libpng: cannot allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: cannot allocate info struct");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + message);
  }
  png_set_write_fn(png, &out, png_write_callback, png_flush_callback);
  png_set_compression_level(png, 3);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
  png_write_info(png, info);
  for (int y = 0; y < image.height(); ++y) rows[y] = const_cast<png_bytep>(image.row(y));
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  write_file_bytes(path, encode_png(image));
}

std::pair<int, int> png_dimensions(std::span<const std::uint8_t> encoded) {
  // IHDR always directly follows the 8-byte signature.
  if (!is_png(encoded) || encoded.size() < 24) throw DecodeError("not a PNG stream");
  auto be32 = [&](std::size_t o) {
    return (std::uint32_t{encoded[o]} << 24) | (std::uint32_t{encoded[o + 1]} << 16) |
           (std::uint32_t{encoded[o + 2]} << 8) | std::uint32_t{encoded[o + 3]};
  };
  return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace synthpaste
