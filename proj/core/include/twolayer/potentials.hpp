#pragma once

// Scattered and total fields from a solved density, and exact reference
// solutions used for validation.

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "twolayer/nystrom.hpp"

namespace twolayer {

enum class Region { upper, lower };

const char* to_string(Region r);

struct FieldSample {
  Point2 x{};
  Complex incident{};
  Complex scattered{};
  Complex total{};
  Region region = Region::upper;
  /// Set when x lies within 1e-2 of the surface, where the plain quadrature
  /// loses accuracy.
  bool near_surface = false;
};

struct FieldOptions {
  unsigned threads = 0;
};

/// Distance from x to the surface, estimated from the grid nodes and refined
/// by a local minimisation.
double surface_distance(const SurfaceProfile& surf, const Grid& grid, Point2 x);

/// u^s = int [dG/dnu(y) + i eta G] psi ds, trapezoidal in t. x must lie above
/// the surface at distance > 1e-6 (NearSingularityError otherwise).
Complex eval_scattered_dbvp(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts = {});

/// u^s = int G psi ds.
Complex eval_scattered_ibvp(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts = {});

/// Dispatch on the problem kind.
Complex eval_scattered(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts = {});

/// Gradient of the scattered field in x (x off the interface).
CVec2 eval_scattered_gradient(const DensitySolution& sol, const BoundaryProblem& p, Point2 x,
                              const FieldOptions& opts = {});

/// u0 + u^s with region and proximity tags.
FieldSample total_field(const BoundaryProblem& p, const DensitySolution& sol, Point2 x, const FieldOptions& opts = {});

/// Boundary quantity reproduced by the discrete solution at surface parameter
/// s (off-node allowed): u^s for Dirichlet, du^s/dnu - i k- beta u^s for
/// impedance. Uses the jump relation with the interpolated density; compare
/// with p.data(s).
Complex boundary_trace(const BoundaryProblem& p, const DensitySolution& sol, double s);

/// Exact total field for a flat surface x2 = height under the interface:
/// A e^{i k+ x.d} + B e^{i k+ x.d_r} above, C e^{i k- x.d_t} + D e^{i k- x.d_n}
/// below, with A = 1.
struct FourWaveSolution {
  MediumPair medium;
  double theta_d;
  ProblemKind kind;
  Complex beta0;
  double height;
  Complex a{1.0};
  Complex b{};
  Complex c{};
  Complex d{};
  std::array<Complex, 2> dir{};
  std::array<Complex, 2> dir_r{};
  std::array<Complex, 2> dir_t{};
  std::array<Complex, 2> dir_n{};

  Complex value(Point2 x) const;
  CVec2 gradient(Point2 x) const;
};

/// Solves the interface and surface conditions for B, C, D. Throws
/// DegenerateError when the system is singular.
FourWaveSolution four_wave_exact(const MediumPair& m, double theta_d, ProblemKind kind, Complex beta0 = 1.0,
                                 double height = -1.0);

/// Exact scattered field for incidence G(., y0) from a source below the
/// surface: u^s(x) = -G(x, y0). Throws DomainError if y0 is not below the
/// surface or x is not above it.
Complex point_source_exact(const MediumPair& m, const SurfaceProfile& surf, Point2 y0, Point2 x,
                           const GreenOptions& opts = {});

/// CSV with columns x1, x2, re, im, tag (tag: region, plus "+near" when flagged).
void write_field_csv(std::ostream& os, std::span<const FieldSample> samples, int precision = 15);

}  // namespace twolayer
