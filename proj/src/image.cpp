#include "nlch/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace nlch {

ImageGray::ImageGray(int w, int h, std::uint8_t fill) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw ImageError("image dimensions must be positive");
  pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

namespace {

void skip_space_and_comments(std::istream& in) {
  while (true) {
    int c = in.peek();
    if (c == EOF) return;
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  long v = 0;
  int digits = 0;
  while (std::isdigit(in.peek())) {
    v = v * 10 + (in.get() - '0');
    if (v > 1000000000L) throw ImageError(std::string("PGM: ") + what + " out of range");
    ++digits;
  }
  if (digits == 0) throw ImageError(std::string("PGM: malformed header, expected ") + what);
  return v;
}

}  // namespace

ImageGray read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() == 0) throw ImageError("PGM: empty file");
  if (in.gcount() < 2 || magic[0] != 'P') throw ImageError("PGM: not a PGM file (bad magic)");
  if (magic[1] == '2') throw ImageError("PGM: unsupported format P2 (ASCII); only binary P5 is accepted");
  if (magic[1] != '5') {
    throw ImageError(std::string("PGM: unsupported format P") + magic[1] + "; only binary P5 is accepted");
  }
  const long w = read_header_int(in, "width");
  const long h = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (w <= 0 || h <= 0) throw ImageError("PGM: width and height must be positive");
  if (maxval != 255) throw ImageError("PGM: unsupported maxval " + std::to_string(maxval) + " (expected 255)");
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) throw ImageError("PGM: malformed header terminator");
  ImageGray img(static_cast<int>(w), static_cast<int>(h));
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
    throw ImageError("PGM: truncated payload (" + std::to_string(in.gcount()) + " of " +
                     std::to_string(img.pixels.size()) + " bytes)");
  }
  return img;
}

ImageGray read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("PGM: cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const ImageGray& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height || image.width <= 0) {
    throw ImageError("PGM: image buffer does not match its dimensions");
  }
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw ImageError("PGM: write failed");
}

void write_pgm(const std::filesystem::path& path, const ImageGray& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("PGM: cannot open " + path.string() + " for writing");
  write_pgm(out, image);
}

std::size_t Mask::damaged_count() const { return static_cast<std::size_t>(std::count(damaged.begin(), damaged.end(), true)); }

Mask mask_from_image(const ImageGray& image) {
  Mask m{image.width, image.height, std::vector<bool>(image.pixels.size())};
  for (std::size_t i = 0; i < image.pixels.size(); ++i) m.damaged[i] = image.pixels[i] < 128;
  return m;
}

ImageGray mask_to_image(const Mask& mask) {
  ImageGray img(mask.width, mask.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = mask.damaged[i] ? 0 : 255;
  return img;
}

}  // namespace nlch
