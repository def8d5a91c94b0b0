#pragma once

// Bessel and Hankel functions of order 0 and 1 for real arguments, and the
// square-root branches that define the vertical wavenumber of a layer.

#include "twolayer/types.hpp"

namespace twolayer::specfun {

/// J0, J1, Y0, Y1 at the same argument. Computing them together shares the
/// expensive part (series, recurrence or asymptotic phase).
struct BesselSet {
  double j0 = 0.0;
  double j1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

/// All four functions at z > 0. Throws DomainError for z <= 0 or non-finite z.
BesselSet bessel_set(double z);

/// J_order(z) for order 0 or 1 and z >= 0.
double bessel_j(int order, double z);

/// Y_order(z) for order 0 or 1 and z > 0.
double bessel_y(int order, double z);

/// H^(1)_order(z) = J_order(z) + i Y_order(z), z > 0.
Complex hankel1(int order, double z);

/// Square root with arg(z) in (-3pi/2, pi/2); cut along the upper imaginary axis.
Complex sqrt_branch1(Complex z);

/// Square root with arg(z) in (-pi/2, 3pi/2); cut along the lower imaginary axis.
Complex sqrt_branch2(Complex z);

/// S(z, a) = S1(z - a) S2(z + a). On the real axis this is -i sqrt(a^2 - z^2)
/// for |z| <= a and sqrt(z^2 - a^2) otherwise.
Complex vertical_wavenumber(Complex z, double a);

/// arccos(n) when k_plus > k_minus, arccos(1/n) otherwise, with n = k_minus/k_plus.
double critical_angle(double k_plus, double k_minus);

namespace detail {

// Unchecked branch square roots for the quadrature hot loops. The sign bit of
// a zero imaginary part selects the side of the negative real axis.
inline Complex sqrt1_fast(Complex z) {
  const Complex r = std::sqrt(z);
  return (z.real() < 0.0 && !std::signbit(z.imag())) ? -r : r;
}

inline Complex sqrt2_fast(Complex z) {
  const Complex r = std::sqrt(z);
  return (z.real() < 0.0 && std::signbit(z.imag())) ? -r : r;
}

inline Complex vertical_wavenumber_fast(Complex z, double a) {
  return sqrt1_fast(z - a) * sqrt2_fast(z + a);
}

}  // namespace detail

}  // namespace twolayer::specfun
