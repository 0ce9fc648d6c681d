#pragma once

#include <variant>

#include "nlch/grid.hpp"

namespace nlch {

/// Oono reaction sigma (phi - mbar). sigma = 0 is the plain nonlocal CH flow.
struct ChoParams {
  double sigma = 1.0;
  double mbar = 0.0;
};

/// Fidelity reaction lambda(x) (phi - h(x)).
struct ChbegParams {
  ScalarField lambda;
  ScalarField h;
};

/// Which reaction term to use plus the shared forcing (prescribed velocity u
/// and source g).
class ModelSpec {
 public:
  static ModelSpec cho(const Grid& grid, double sigma, double mbar);
  static ModelSpec chbeg(ScalarField lambda, ScalarField h);

  ModelSpec& with_velocity(VectorField u);
  ModelSpec& with_source(ScalarField g);

  const Grid& grid() const { return grid_; }
  bool is_cho() const { return std::holds_alternative<ChoParams>(variant_); }
  const ChoParams& cho() const { return std::get<ChoParams>(variant_); }
  const ChbegParams& chbeg() const { return std::get<ChbegParams>(variant_); }
  const VectorField& velocity() const { return velocity_; }
  const ScalarField& source() const { return source_; }
  bool has_source() const { return has_source_; }
  /// max lambda for CHBEG, 0 for CHO.
  double lambda_max() const;

 private:
  ModelSpec(const Grid& grid, std::variant<ChoParams, ChbegParams> v);

  Grid grid_;
  std::variant<ChoParams, ChbegParams> variant_;
  VectorField velocity_;
  ScalarField source_;
  bool has_source_ = false;
};

}  // namespace nlch
