#include "twolayer/reference.hpp"

#include <cmath>

#include "twolayer/errors.hpp"
#include "twolayer/specfun.hpp"

namespace twolayer {

Complex fresnel_R(const MediumPair& m, double theta) {
  const double s = std::sin(theta);
  const Complex sv = specfun::vertical_wavenumber(std::cos(theta), m.n());
  const Complex den = kI * s - sv;
  if (std::abs(den) < 1e-14) throw DegenerateError("fresnel_R: vanishing denominator (grazing incidence)");
  return (kI * s + sv) / den;
}

Complex fresnel_T(const MediumPair& m, double theta) { return fresnel_R(m, theta) + 1.0; }

PlaneWaveReference::PlaneWaveReference(const MediumPair& m, double theta_d) : medium_(m), theta_d_(theta_d) {
  if (!std::isfinite(theta_d) || theta_d < kPi || theta_d > 2.0 * kPi) {
    throw DomainError("plane wave: theta_d must lie in [pi, 2 pi]");
  }
  // The coefficients of the downward wave are R and T at the reversed angle.
  r_ = fresnel_R(m, kPi + theta_d);
  t_ = r_ + 1.0;
  const double n = m.n();
  const double c = std::cos(theta_d);
  d_t_ = {Complex(c / n), -kI * specfun::vertical_wavenumber(c, n) / n};
}

Complex PlaneWaveReference::value(Point2 x) const {
  const double kp = medium_.k_plus();
  const double km = medium_.k_minus();
  if (x.x2 >= 0.0) {
    const auto di = d();
    const auto dr = d_r();
    return std::exp(kI * kp * (x.x1 * di[0] + x.x2 * di[1])) + r_ * std::exp(kI * kp * (x.x1 * dr[0] + x.x2 * dr[1]));
  }
  return t_ * std::exp(kI * km * (x.x1 * d_t_[0] + x.x2 * d_t_[1]));
}

CVec2 PlaneWaveReference::gradient(Point2 x) const {
  const double kp = medium_.k_plus();
  const double km = medium_.k_minus();
  if (x.x2 >= 0.0) {
    const auto di = d();
    const auto dr = d_r();
    const Complex ui = std::exp(kI * kp * (x.x1 * di[0] + x.x2 * di[1]));
    const Complex ur = r_ * std::exp(kI * kp * (x.x1 * dr[0] + x.x2 * dr[1]));
    return {kI * kp * (di[0] * ui + dr[0] * ur), kI * kp * (di[1] * ui + dr[1] * ur)};
  }
  const Complex ut = t_ * std::exp(kI * km * (x.x1 * d_t_[0] + x.x2 * d_t_[1]));
  return {kI * km * d_t_[0] * ut, kI * km * d_t_[1] * ut};
}

}  // namespace twolayer
