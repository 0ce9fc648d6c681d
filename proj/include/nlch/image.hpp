#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace nlch {

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit grayscale, row-major.
struct ImageGray {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  ImageGray() = default;
  ImageGray(int width, int height, std::uint8_t fill = 0);
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const ImageGray&) const = default;
};

/// Binary PGM (P5, maxval 255) only.
ImageGray read_pgm(std::istream& in);
ImageGray read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const ImageGray& image);
void write_pgm(const std::filesystem::path& path, const ImageGray& image);

/// true = damaged. Mask pixels below 128 are damaged (0 = damaged, 255 = intact).
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<bool> damaged;

  bool is_damaged(int x, int y) const { return damaged[static_cast<std::size_t>(y) * width + x]; }
  std::size_t damaged_count() const;
};

Mask mask_from_image(const ImageGray& image);
ImageGray mask_to_image(const Mask& mask);

}  // namespace nlch
