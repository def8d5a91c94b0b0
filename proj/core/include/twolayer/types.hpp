#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace twolayer {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Point in the plane. The interface between the two media is x2 = 0.
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

/// Mirror image (y1, -y2) across the interface.
inline Point2 reflect(Point2 p) { return {p.x1, -p.x2}; }

/// Complex 2-vector, used for gradients of complex fields.
struct CVec2 {
  Complex c1{};
  Complex c2{};

  CVec2& operator+=(const CVec2& o) {
    c1 += o.c1;
    c2 += o.c2;
    return *this;
  }
  friend CVec2 operator+(CVec2 a, const CVec2& b) { return a += b; }
  friend CVec2 operator*(Complex s, const CVec2& v) { return {s * v.c1, s * v.c2}; }
  /// Directional derivative along a real direction.
  Complex dot(double n1, double n2) const { return c1 * n1 + c2 * n2; }
};

}  // namespace twolayer
