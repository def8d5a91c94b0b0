#pragma once

// Plane wave incident from above on the flat interface, with its reflected and
// transmitted parts. This is the reference field u0 that the scattered field
// is measured against.

#include <array>

#include "twolayer/green.hpp"

namespace twolayer {

/// Reflection coefficient (i sin th + S(cos th, n)) / (i sin th - S(cos th, n)).
/// Throws DegenerateError when the denominator nearly vanishes.
Complex fresnel_R(const MediumPair& m, double theta);

/// Transmission coefficient R(theta) + 1.
Complex fresnel_T(const MediumPair& m, double theta);

class PlaneWaveReference {
 public:
  /// theta_d in [pi, 2 pi] (downward incidence).
  PlaneWaveReference(const MediumPair& m, double theta_d);

  double theta_d() const { return theta_d_; }
  const MediumPair& medium() const { return medium_; }

  /// Coefficients of the reflected and transmitted waves.
  Complex reflection() const { return r_; }
  Complex transmission() const { return t_; }

  std::array<double, 2> d() const { return {std::cos(theta_d_), std::sin(theta_d_)}; }
  std::array<double, 2> d_r() const { return {std::cos(theta_d_), -std::sin(theta_d_)}; }
  /// (cos th / n, -i S(cos th, n) / n); complex when the transmitted wave is evanescent.
  std::array<Complex, 2> d_t() const { return d_t_; }

  /// u0 above the interface is u_i + u_r, below it is u_t.
  Complex value(Point2 x) const;
  CVec2 gradient(Point2 x) const;

 private:
  MediumPair medium_;
  double theta_d_;
  Complex r_;
  Complex t_;
  std::array<Complex, 2> d_t_;
};

}  // namespace twolayer
