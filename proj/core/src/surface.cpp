#include "twolayer/surface.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "twolayer/errors.hpp"
#include "twolayer/expression.hpp"

namespace twolayer {
namespace {

// Below this separation the difference quotients are replaced by Gauss
// integrals of the derivatives.
constexpr double kCloseSeparation = 0.1;

using Gauss7 = boost::math::quadrature::gauss<double, 7>;

// int_0^1 g(tau) d tau
template <class G>
double unit_integral(G&& g) {
  return Gauss7::integrate(g, 0.0, 1.0);
}

struct Sampled {
  double f_max;
  double f_min;
  double slope_max;
};

Sampled sample(const SurfaceProfile::Fn& f, const SurfaceProfile::Fn& df, SurfaceProfile::SampleGrid grid) {
  if (grid.samples < 2 || !(grid.half_width > 0.0)) throw DomainError("surface: invalid sample grid");
  Sampled s{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
  const double step = 2.0 * grid.half_width / (grid.samples - 1);
  for (int i = 0; i < grid.samples; ++i) {
    const double t = -grid.half_width + i * step;
    const double v = f(t);
    const double d = df(t);
    if (!std::isfinite(v) || !std::isfinite(d)) throw DomainError("surface: profile is not finite at t = " + std::to_string(t));
    s.f_max = std::max(s.f_max, v);
    s.f_min = std::min(s.f_min, v);
    s.slope_max = std::max(s.slope_max, std::abs(d));
  }
  return s;
}

}  // namespace

SurfaceProfile SurfaceProfile::from_functions(std::string name, Fn f, Fn df, Fn d2f, SampleGrid grid) {
  SurfaceProfile p(std::move(name), std::move(f), std::move(df), std::move(d2f));
  const Sampled s = sample(p.f_, p.df_, grid);
  if (!(s.f_max < 0.0)) throw DomainError("surface '" + p.name_ + "' must lie strictly below x2 = 0 (sup f = " +
                                          std::to_string(s.f_max) + ")");
  p.f_plus_ = s.f_max;
  p.f_minus_ = s.f_min;
  p.lipschitz_ = s.slope_max;
  return p;
}

SurfaceProfile SurfaceProfile::from_functions(std::string name, Fn f, Fn df, Fn d2f, double f_plus, double f_minus,
                                              double lipschitz, SampleGrid grid) {
  if (!(f_plus < 0.0)) throw DomainError("surface '" + name + "': declared f_plus must be negative");
  if (f_minus > f_plus) throw DomainError("surface '" + name + "': f_minus exceeds f_plus");
  SurfaceProfile p(std::move(name), std::move(f), std::move(df), std::move(d2f));
  const Sampled s = sample(p.f_, p.df_, grid);
  const double slack = 1e-12;
  if (s.f_max > f_plus + slack || s.f_min < f_minus - slack) {
    throw DomainError("surface '" + p.name_ + "': sampled heights leave the declared bounds");
  }
  if (s.slope_max > lipschitz + slack) throw DomainError("surface '" + p.name_ + "': sampled slope exceeds the declared bound");
  p.f_plus_ = f_plus;
  p.f_minus_ = f_minus;
  p.lipschitz_ = lipschitz;
  return p;
}

SurfaceProfile SurfaceProfile::builtin(std::string_view name) {
  if (name == "gamma1") {
    // -1 + 0.3 sin(0.7 pi t) exp(-0.4 t^2)
    constexpr double w = 0.7 * kPi;
    auto f = [](double t) { return -1.0 + 0.3 * std::sin(w * t) * std::exp(-0.4 * t * t); };
    auto df = [](double t) {
      return 0.3 * std::exp(-0.4 * t * t) * (w * std::cos(w * t) - 0.8 * t * std::sin(w * t));
    };
    auto d2f = [](double t) {
      const double s = std::sin(w * t);
      const double c = std::cos(w * t);
      return 0.3 * std::exp(-0.4 * t * t) * ((0.64 * t * t - 0.8 - w * w) * s - 1.6 * w * t * c);
    };
    return from_functions("gamma1", f, df, d2f);
  }
  if (name == "gamma2") {
    auto f = [](double) { return -1.0; };
    auto zero = [](double) { return 0.0; };
    return from_functions("gamma2", f, zero, zero, -1.0, -1.0, 0.0);
  }
  if (name == "gamma3") {
    // -1 + 0.16 sin(0.3 pi t)
    constexpr double w = 0.3 * kPi;
    auto f = [](double t) { return -1.0 + 0.16 * std::sin(w * t); };
    auto df = [](double t) { return 0.16 * w * std::cos(w * t); };
    auto d2f = [](double t) { return -0.16 * w * w * std::sin(w * t); };
    return from_functions("gamma3", f, df, d2f, -0.84, -1.16, 0.16 * w);
  }
  throw ConfigError("unknown builtin surface '" + std::string(name) + "' (expected gamma1, gamma2 or gamma3)");
}

SurfaceProfile SurfaceProfile::from_expression(std::string_view expr, SampleGrid grid) {
  const auto f = std::make_shared<Expression>(Expression::parse(expr));
  const auto df = std::make_shared<Expression>(f->derivative());
  const auto d2f = std::make_shared<Expression>(df->derivative());
  return from_functions(
      std::string(expr), [f](double t) { return (*f)(t); }, [df](double t) { return (*df)(t); },
      [d2f](double t) { return (*d2f)(t); }, grid);
}

std::pair<double, double> SurfaceProfile::normal(double s) const {
  const double d = df_(s);
  const double sp = std::sqrt(1.0 + d * d);
  return {d / sp, -1.0 / sp};
}

double SurfaceProfile::mean_slope(double s, double t) const {
  const double d = t - s;
  if (d == 0.0) return df_(s);
  if (std::abs(d) >= kCloseSeparation) return (f_(t) - f_(s)) / d;
  return unit_integral([&](double tau) { return df_(s + tau * d); });
}

double SurfaceProfile::chord_normal(double s, double t) const {
  const double d = t - s;
  if (d == 0.0) return 0.0;
  if (std::abs(d) >= kCloseSeparation) return d * df_(t) - (f_(t) - f_(s));
  // int_s^t f''(w) (w - s) dw
  return d * d * unit_integral([&](double tau) { return d2f_(s + tau * d) * tau; });
}

}  // namespace twolayer
