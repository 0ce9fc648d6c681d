#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nlch/grid.hpp"

namespace nlch {

/// Malformed or truncated file (snapshot, image, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  ScalarField field;
  double time = 0.0;
};

// NLCH1 layout: four ASCII header lines
//   NLCH1
//   <dim> <nx> <ny>
//   <lx> <ly> <periodic|neumann>
//   time <t>
// followed by nx*ny little-endian IEEE-754 doubles in row-major order.
void write_snapshot(std::ostream& os, const ScalarField& field, double time);
void write_snapshot(const std::string& path, const ScalarField& field, double time);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace nlch
