#include "nlch/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nlch {

namespace {

constexpr const char* kMagic = "NLCH1";

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(bytes, 8);
}

double get_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string read_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError(std::string("NLCH1: missing ") + what + " line");
  return line;
}

}  // namespace

void write_snapshot(std::ostream& os, const ScalarField& field, double time) {
  const Grid& g = field.grid();
  os << kMagic << '\n'
     << g.dim << ' ' << g.nx << ' ' << g.ny << '\n'
     << format_double(g.lx) << ' ' << format_double(g.ly) << ' ' << to_string(g.bc) << '\n'
     << "time " << format_double(time) << '\n';
  for (double v : field.values()) put_le(os, v);
  if (!os) throw std::runtime_error("NLCH1: write failed");
}

void write_snapshot(const std::string& path, const ScalarField& field, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_snapshot(os, field, time);
}

Snapshot read_snapshot(std::istream& is) {
  if (read_line(is, "magic") != kMagic) throw FormatError("NLCH1: bad magic string");
  int dim = 0, nx = 0, ny = 0;
  {
    std::istringstream ls(read_line(is, "shape"));
    if (!(ls >> dim >> nx >> ny)) throw FormatError("NLCH1: malformed shape line");
  }
  double lx = 0, ly = 0;
  std::string bc;
  {
    std::istringstream ls(read_line(is, "extent"));
    if (!(ls >> lx >> ly >> bc)) throw FormatError("NLCH1: malformed extent line");
  }
  double time = 0;
  {
    std::istringstream ls(read_line(is, "time"));
    std::string tag;
    if (!(ls >> tag >> time) || tag != "time") throw FormatError("NLCH1: malformed time line");
  }
  Grid grid;
  try {
    grid = make_grid(dim, nx, ny, lx, ly, parse_boundary(bc));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("NLCH1: ") + e.what());
  }
  if (dim == 1 && ny != 1) throw FormatError("NLCH1: 1D snapshot must have ny = 1");
  std::vector<unsigned char> payload(grid.size() * 8);
  is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (is.gcount() != static_cast<std::streamsize>(payload.size())) throw FormatError("NLCH1: truncated payload");
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_le(payload.data() + 8 * i);
  return Snapshot{ScalarField(grid, std::move(values)), time};
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_snapshot(is);
}

}  // namespace nlch
