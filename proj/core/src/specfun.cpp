#include "twolayer/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "twolayer/errors.hpp"

namespace twolayer::specfun {
namespace {

// Below this argument the ascending series is summed directly; above kMillerMax
// the Hankel asymptotic expansion is used. In between, J_n come from Miller's
// backward recurrence and Y0/Y1 from the Neumann series in even-order J_n.
constexpr double kSeriesMax = 4.0;
constexpr double kMillerMax = 25.0;
constexpr double kTwoOverPi = 2.0 / kPi;

BesselSet series(double z) {
  const double q = 0.25 * z * z;
  const double half = 0.5 * z;
  const double log_term = std::log(half) + kEulerGamma;

  // J0 and the Y0 tail share the factor q^k/(k!)^2; J1 and the Y1 tail share
  // q^k/(k!(k+1)!).
  double t0 = 1.0;
  double t1 = 1.0;
  double j0 = 1.0;
  double j1 = 1.0;
  double y0_tail = 0.0;
  double harmonic = 0.0;
  // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
  double y1_tail = -2.0 * kEulerGamma + 1.0;
  for (int k = 1; k < 60; ++k) {
    t0 *= -q / (double(k) * double(k));
    t1 *= -q / (double(k) * double(k + 1));
    const double h_next = harmonic + 1.0 / k;
    j0 += t0;
    j1 += t1;
    y0_tail -= t0 * h_next;
    y1_tail += t1 * (-2.0 * kEulerGamma + h_next + (h_next + 1.0 / (k + 1)));
    harmonic = h_next;
    if (std::abs(t0) < 1e-18 * std::abs(j0) && std::abs(t1) < 1e-18 * std::abs(j1)) break;
  }
  j1 *= half;

  BesselSet out;
  out.j0 = j0;
  out.j1 = j1;
  out.y0 = kTwoOverPi * (log_term * j0 + y0_tail);
  out.y1 = -kTwoOverPi / z + kTwoOverPi * std::log(half) * j1 - (half / kPi) * y1_tail;
  return out;
}

BesselSet miller(double z) {
  // Start well above the turning point so the recurrence has converged to the
  // minimal solution to full precision before reaching n = 0.
  int start = static_cast<int>(z + 12.0 * std::cbrt(z) + 30.0);
  if (start % 2 != 0) ++start;
  std::array<double, 160> j{};
  const int top = start;
  double next = 0.0;
  double cur = 1e-300;
  j[top] = cur;
  for (int n = top; n > 0; --n) {
    const double prev = (2.0 * n / z) * cur - next;
    next = cur;
    cur = prev;
    j[n - 1] = cur;
    if (std::abs(cur) > 1e250) {
      for (int m = n - 1; m <= top; ++m) j[m] *= 1e-250;
      next *= 1e-250;
      cur *= 1e-250;
    }
  }
  double norm = j[0];
  for (int n = 2; n <= top; n += 2) norm += 2.0 * j[n];
  for (int n = 0; n <= top; ++n) j[n] /= norm;

  double even_sum = 0.0;   // sum (-1)^k J_{2k} / k
  double deriv_sum = 0.0;  // sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    even_sum += sign * j[2 * k] / k;
    deriv_sum += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  const double log_term = std::log(0.5 * z) + kEulerGamma;
  BesselSet out;
  out.j0 = j[0];
  out.j1 = j[1];
  out.y0 = kTwoOverPi * (log_term * j[0] - 2.0 * even_sum);
  out.y1 = -kTwoOverPi * (j[0] / z - log_term * j[1] - deriv_sum);
  return out;
}

// Hankel expansion: J = A (P cos chi - Q sin chi), Y = A (P sin chi + Q cos chi).
void asymptotic_pq(int order, double z, double& p, double& q) {
  const double mu = 4.0 * order * order;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // a_k / z^k contributes to Q for odd k and to P for even k, with
    // alternating signs within each series.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (last < 1e-18) break;
  }
}

BesselSet asymptotic(double z) {
  const double amp = std::sqrt(kTwoOverPi / z);
  BesselSet out;
  double p = 0.0;
  double q = 0.0;
  asymptotic_pq(0, z, p, q);
  double chi = z - 0.25 * kPi;
  double c = std::cos(chi);
  double s = std::sin(chi);
  out.j0 = amp * (p * c - q * s);
  out.y0 = amp * (p * s + q * c);
  asymptotic_pq(1, z, p, q);
  chi = z - 0.75 * kPi;
  c = std::cos(chi);
  s = std::sin(chi);
  out.j1 = amp * (p * c - q * s);
  out.y1 = amp * (p * s + q * c);
  return out;
}

void check_order(int order) {
  if (order != 0 && order != 1) throw DomainError("Bessel order must be 0 or 1, got " + std::to_string(order));
}

}  // namespace

BesselSet bessel_set(double z) {
  if (!std::isfinite(z) || z <= 0.0) throw DomainError("Bessel argument must be finite and positive");
  if (z <= kSeriesMax) return series(z);
  if (z <= kMillerMax) return miller(z);
  return asymptotic(z);
}

double bessel_j(int order, double z) {
  check_order(order);
  if (!std::isfinite(z) || z < 0.0) throw DomainError("Bessel J argument must be finite and non-negative");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  const BesselSet b = bessel_set(z);
  return order == 0 ? b.j0 : b.j1;
}

double bessel_y(int order, double z) {
  check_order(order);
  const BesselSet b = bessel_set(z);
  return order == 0 ? b.y0 : b.y1;
}

Complex hankel1(int order, double z) {
  check_order(order);
  if (!std::isfinite(z) || z <= 0.0) throw DomainError("Hankel function has a logarithmic singularity at z <= 0");
  const BesselSet b = bessel_set(z);
  return order == 0 ? Complex(b.j0, b.y0) : Complex(b.j1, b.y1);
}

Complex sqrt_branch1(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("sqrt_branch1: non-finite argument");
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  if (z.real() == 0.0 && z.imag() > 0.0) throw DomainError("sqrt_branch1: argument on the cut {Re z = 0, Im z > 0}");
  // exact on the real axis, so products stay real or imaginary
  if (z.imag() == 0.0) return z.real() > 0.0 ? Complex(std::sqrt(z.real()), 0.0) : Complex(0.0, -std::sqrt(-z.real()));
  double theta = std::atan2(z.imag(), z.real());
  if (theta > 0.5 * kPi) theta -= 2.0 * kPi;
  return std::polar(std::sqrt(std::abs(z)), 0.5 * theta);
}

Complex sqrt_branch2(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("sqrt_branch2: non-finite argument");
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  if (z.real() == 0.0 && z.imag() < 0.0) throw DomainError("sqrt_branch2: argument on the cut {Re z = 0, Im z < 0}");
  if (z.imag() == 0.0) return z.real() > 0.0 ? Complex(std::sqrt(z.real()), 0.0) : Complex(0.0, std::sqrt(-z.real()));
  double theta = std::atan2(z.imag(), z.real());
  if (theta < -0.5 * kPi) theta += 2.0 * kPi;
  return std::polar(std::sqrt(std::abs(z)), 0.5 * theta);
}

Complex vertical_wavenumber(Complex z, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("vertical_wavenumber: a must be positive");
  return sqrt_branch1(z - a) * sqrt_branch2(z + a);
}

double critical_angle(double k_plus, double k_minus) {
  if (!(k_plus > 0.0) || !(k_minus > 0.0)) throw DomainError("critical_angle: wavenumbers must be positive");
  if (k_plus == k_minus) throw DomainError("critical_angle: undefined for equal wavenumbers");
  const double n = k_minus / k_plus;
  return k_plus > k_minus ? std::acos(n) : std::acos(1.0 / n);
}

}  // namespace twolayer::specfun
