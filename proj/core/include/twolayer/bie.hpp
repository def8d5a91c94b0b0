#pragma once

// Boundary integral equations on the rough surface and the split of their
// kernels into a periodic-logarithm part and a smooth part.
//
// Dirichlet: u^s = int [dG/dnu(y) + i eta G] psi ds solves
//   psi - int kD psi dt = -2 g,   kD(s,t) = 2 [dG/dnu(y) + i eta G] |x'(t)|.
// Impedance: u^s = int G psi ds solves
//   psi - int kI psi dt = 2 g,    kI(s,t) = 2 [i k- beta(s) G - dG/dnu(x)] |x'(t)|.
// Both kernels split as (1/2pi) A ln(4 sin^2((s-t)/2)) + B with A supported in
// |s - t| < pi.

#include <functional>
#include <optional>
#include <variant>

#include "twolayer/green.hpp"
#include "twolayer/reference.hpp"
#include "twolayer/surface.hpp"

namespace twolayer {

enum class ProblemKind { dirichlet, impedance };

const char* to_string(ProblemKind kind);

struct PlaneWave {
  double theta_d = 4.0 * kPi / 3.0;
};

/// Incident field G(., y0) from a source below the surface.
struct PointSource {
  Point2 y0{};
};

using Incidence = std::variant<PlaneWave, PointSource>;

using ParamFn = std::function<Complex(double)>;

class BoundaryProblem {
 public:
  /// eta defaults to sqrt(k_plus k_minus); must be positive.
  static BoundaryProblem dirichlet(MediumPair m, SurfaceProfile surface, Incidence inc,
                                   std::optional<double> eta = std::nullopt, GreenOptions green = {});

  /// beta is the impedance function of the surface parameter; Re beta must be
  /// bounded away from zero on a sample grid.
  static BoundaryProblem impedance(MediumPair m, SurfaceProfile surface, Incidence inc, ParamFn beta,
                                   GreenOptions green = {});

  ProblemKind kind() const { return kind_; }
  const MediumPair& medium() const { return medium_; }
  const SurfaceProfile& surface() const { return surface_; }
  const Incidence& incidence() const { return incidence_; }
  const GreenOptions& green_options() const { return green_; }
  double eta() const { return eta_; }
  Complex beta(double s) const { return beta_ ? beta_(s) : Complex(0.0); }

  /// Boundary data g(s) for the scattered field: u^s = g (Dirichlet) or
  /// du^s/dnu - i k- beta u^s = g (impedance), chosen so the total field
  /// u0 + u^s satisfies the homogeneous condition.
  Complex data(double s) const;

  /// Incident/reference field and its gradient.
  Complex incident(Point2 x) const;
  CVec2 incident_gradient(Point2 x) const;

  /// Replaces the boundary data by an arbitrary function (tests, manufactured solutions).
  void set_data(ParamFn g) { data_override_ = std::move(g); }

 private:
  BoundaryProblem(ProblemKind kind, MediumPair m, SurfaceProfile surface, Incidence inc, GreenOptions green);

  ProblemKind kind_;
  MediumPair medium_;
  SurfaceProfile surface_;
  Incidence incidence_;
  GreenOptions green_;
  double eta_ = 0.0;
  ParamFn beta_;
  ParamFn data_override_;
  std::optional<PlaneWaveReference> plane_;
};

/// Kernel split: kappa = (1/2pi) A ln(4 sin^2((s - t)/2)) + B.
struct KernelSplit {
  std::function<Complex(double, double)> A;
  std::function<Complex(double, double)> B;
  double support_radius = kPi;
};

struct SplitValue {
  Complex A{};
  Complex B{};
};

/// Smooth cutoff: 1 for |s| <= 1, 0 for |s| >= pi, even, C-infinity.
double cutoff_chi(double s);

/// Raw kernels from the Green function evaluator. s == t raises SingularityError.
Complex kernel_dbvp_raw(const BoundaryProblem& p, double s, double t);
Complex kernel_ibvp_raw(const BoundaryProblem& p, double s, double t);
Complex kernel_raw(const BoundaryProblem& p, double s, double t);

/// Log coefficient a and smooth part b with kappa = a ln|s - t| + b for s != t,
/// and their diagonal limits for s == t. r is the remainder R and its
/// derivatives at delta = s - t, v = f(s) + f(t).
struct LogParts {
  Complex a{};
  Complex b{};
};
LogParts log_parts(const BoundaryProblem& p, double s, double t, const RemainderValue& r);

/// A and B at (s, t) given the remainder there.
SplitValue split_at(const BoundaryProblem& p, double s, double t, const RemainderValue& r);

/// Diagonal limits of the Phi-derived smooth parts (exposed for tests).
Complex diag_L2_dbvp(const BoundaryProblem& p, double s);
Complex diag_M2_dbvp(const BoundaryProblem& p, double s);
Complex diag_L2_ibvp(const BoundaryProblem& p, double s);
Complex diag_M2_ibvp(const BoundaryProblem& p, double s);

/// Splits that evaluate the remainder directly (no table).
KernelSplit split_dbvp(const BoundaryProblem& p);
KernelSplit split_ibvp(const BoundaryProblem& p);

/// Right-hand sides: -2 g for Dirichlet, +2 g for impedance.
Complex rhs_dbvp(const BoundaryProblem& p, double s);
Complex rhs_ibvp(const BoundaryProblem& p, double s);
Complex rhs(const BoundaryProblem& p, double s);

}  // namespace twolayer
