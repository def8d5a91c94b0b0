#pragma once

// Rough surface Gamma = {(s, f(s))} lying strictly below the interface x2 = 0.

#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "twolayer/types.hpp"

namespace twolayer {

/// Sampling window used to estimate or spot-check surface bounds.
struct SurfaceSampleGrid {
  double half_width = 100.0;
  int samples = 40001;
};

class SurfaceProfile {
 public:
  using Fn = std::function<double(double)>;

  using SampleGrid = SurfaceSampleGrid;

  /// Bounds are estimated on the sample grid. Throws DomainError unless
  /// sup f < 0 there.
  static SurfaceProfile from_functions(std::string name, Fn f, Fn df, Fn d2f, SampleGrid grid = {});

  /// Declared bounds are spot-checked on the sample grid; a sample outside
  /// them raises DomainError.
  static SurfaceProfile from_functions(std::string name, Fn f, Fn df, Fn d2f, double f_plus, double f_minus,
                                       double lipschitz, SampleGrid grid = {});

  /// "gamma1", "gamma2" or "gamma3". Throws ConfigError for other names.
  static SurfaceProfile builtin(std::string_view name);

  /// Profile f(t) given as an expression in t; derivatives are symbolic.
  static SurfaceProfile from_expression(std::string_view expr, SampleGrid grid = {});

  const std::string& name() const { return name_; }
  double f(double s) const { return f_(s); }
  double df(double s) const { return df_(s); }
  double d2f(double s) const { return d2f_(s); }

  double f_plus() const { return f_plus_; }
  double f_minus() const { return f_minus_; }
  double lipschitz() const { return lipschitz_; }

  Point2 point(double s) const { return {s, f_(s)}; }
  double speed(double s) const { return std::sqrt(1.0 + df_(s) * df_(s)); }
  /// Unit normal (f', -1)/speed, pointing out of the region above Gamma.
  std::pair<double, double> normal(double s) const;

  /// (f(t) - f(s)) / (t - s), accurate also for nearby s and t; f'(s) at t == s.
  double mean_slope(double s, double t) const;

  /// (t - s) f'(t) - (f(t) - f(s)), i.e. (y - x).nu(y) |x'(t)| for x = x(s),
  /// y = x(t). Computed without cancellation when s and t are close.
  double chord_normal(double s, double t) const;

 private:
  SurfaceProfile(std::string name, Fn f, Fn df, Fn d2f)
      : name_(std::move(name)), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {}

  std::string name_;
  Fn f_;
  Fn df_;
  Fn d2f_;
  double f_plus_ = 0.0;
  double f_minus_ = 0.0;
  double lipschitz_ = 0.0;
};

}  // namespace twolayer
