#pragma once

// Two-layered Green function. The upper half-plane x2 > 0 has wavenumber
// k_plus, the lower one k_minus. G is written as Fourier integrals over the
// horizontal wavenumber xi; these are evaluated on a contour pushed into the
// complex plane around the branch points xi = k_plus, k_minus.

#include <span>

#include "twolayer/types.hpp"

namespace twolayer {

class MediumPair {
 public:
  /// Throws DomainError unless both wavenumbers are positive, finite and distinct.
  MediumPair(double k_plus, double k_minus);

  double k_plus() const { return k_plus_; }
  double k_minus() const { return k_minus_; }
  /// n = k_minus / k_plus
  double n() const { return k_minus_ / k_plus_; }
  double theta_c() const { return theta_c_; }
  double k_min() const { return k_plus_ < k_minus_ ? k_plus_ : k_minus_; }
  double k_max() const { return k_plus_ < k_minus_ ? k_minus_ : k_plus_; }

 private:
  double k_plus_;
  double k_minus_;
  double theta_c_;
};

struct GreenOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-13;
  /// The real tail of the contour may not extend beyond this xi.
  double xi_cap = 2e5;
  int max_panels = 40000;
};

/// Value with gradients in both arguments.
struct GreenValue {
  Complex value{};
  CVec2 grad_x{};
  CVec2 grad_y{};
};

/// R and its partial derivatives for two points below the interface, as a
/// function of delta = x1 - y1 and v = x2 + y2 < 0.
struct RemainderValue {
  Complex r{};
  Complex r_delta{};
  Complex r_v{};
};

/// (i/4) H0(k |x - y|). Throws SingularityError for x == y.
Complex phi_free(double k, Point2 x, Point2 y);

/// Free-space fundamental solution with both gradients.
GreenValue phi_free_full(double k, Point2 x, Point2 y);

/// G(x, y) for the quadrant case selected by the signs of x2 and y2 (points on
/// the interface count as upper).
Complex green(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts = {});

/// G with gradients in x and y from differentiated integrands.
GreenValue green_full(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts = {});

/// Gradient in x; x must not lie on the interface.
CVec2 grad_green_x(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts = {});

/// Gradient in y; y must not lie on the interface.
CVec2 grad_green_y(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts = {});

/// R(x, y) = G(x, y) - Phi_{k_minus}(x, y) for x2 < 0, y2 < 0. Finite at x == y.
Complex green_remainder(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts = {});

/// R with its derivatives at (delta, v), v < 0.
RemainderValue remainder_full(const MediumPair& m, double delta, double v, const GreenOptions& opts = {});

/// Remainder at a fixed delta for several v values at once (one contour
/// integral shared by all of them). out receives one RemainderValue per v.
void remainder_batch(const MediumPair& m, double delta, std::span<const double> v, const GreenOptions& opts,
                     RemainderValue* out);

}  // namespace twolayer
