#include "twolayer/bie.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "twolayer/errors.hpp"
#include "twolayer/specfun.hpp"

namespace twolayer {

const char* to_string(ProblemKind kind) { return kind == ProblemKind::dirichlet ? "dirichlet" : "impedance"; }

BoundaryProblem::BoundaryProblem(ProblemKind kind, MediumPair m, SurfaceProfile surface, Incidence inc,
                                 GreenOptions green)
    : kind_(kind), medium_(m), surface_(std::move(surface)), incidence_(inc), green_(green) {
  if (const auto* pw = std::get_if<PlaneWave>(&incidence_)) {
    plane_.emplace(medium_, pw->theta_d);
  } else {
    const Point2 y0 = std::get<PointSource>(incidence_).y0;
    if (!std::isfinite(y0.x1) || !std::isfinite(y0.x2) || !(y0.x2 < surface_.f(y0.x1))) {
      throw DomainError("point source must lie strictly below the surface");
    }
  }
}

BoundaryProblem BoundaryProblem::dirichlet(MediumPair m, SurfaceProfile surface, Incidence inc,
                                           std::optional<double> eta, GreenOptions green) {
  BoundaryProblem p(ProblemKind::dirichlet, m, std::move(surface), inc, green);
  p.eta_ = eta.value_or(std::sqrt(m.k_plus() * m.k_minus()));
  if (!(p.eta_ > 0.0) || !std::isfinite(p.eta_)) throw DomainError("dirichlet problem: eta must be positive");
  return p;
}

BoundaryProblem BoundaryProblem::impedance(MediumPair m, SurfaceProfile surface, Incidence inc, ParamFn beta,
                                           GreenOptions green) {
  if (!beta) throw DomainError("impedance problem: beta is required");
  BoundaryProblem p(ProblemKind::impedance, m, std::move(surface), inc, green);
  double min_re = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 4000; ++i) {
    const Complex b = beta(-100.0 + 0.05 * i);
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) throw DomainError("impedance problem: beta is not finite");
    min_re = std::min(min_re, b.real());
  }
  if (!(min_re > 0.0)) throw DomainError("impedance problem: Re beta must be positive");
  p.beta_ = std::move(beta);
  return p;
}

Complex BoundaryProblem::incident(Point2 x) const {
  if (plane_) return plane_->value(x);
  return green(medium_, x, std::get<PointSource>(incidence_).y0, green_);
}

CVec2 BoundaryProblem::incident_gradient(Point2 x) const {
  if (plane_) return plane_->gradient(x);
  return green_full(medium_, x, std::get<PointSource>(incidence_).y0, green_).grad_x;
}

Complex BoundaryProblem::data(double s) const {
  if (data_override_) return data_override_(s);
  const Point2 x = surface_.point(s);
  if (kind_ == ProblemKind::dirichlet) return -incident(x);
  Complex u;
  CVec2 grad;
  if (plane_) {
    u = plane_->value(x);
    grad = plane_->gradient(x);
  } else {
    const GreenValue g = green_full(medium_, x, std::get<PointSource>(incidence_).y0, green_);
    u = g.value;
    grad = g.grad_x;
  }
  const auto [n1, n2] = surface_.normal(s);
  return -(grad.dot(n1, n2) - kI * medium_.k_minus() * beta(s) * u);
}

double cutoff_chi(double s) {
  const double u = (kPi - std::abs(s)) / (kPi - 1.0);
  if (u >= 1.0) return 1.0;
  if (u <= 0.0) return 0.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

namespace {

// G = Phi_{k-} + R on the surface. The normal derivatives of Phi go through
// chord_normal: forming (y - x).nu from coordinates cancels badly when s and
// t are close.
struct SurfaceGreen {
  Complex value;
  Complex phi_radial;  // -(i k / 4) H1(k r) / r
  RemainderValue rem;
};

SurfaceGreen surface_green(const BoundaryProblem& p, double s, double t) {
  const SurfaceProfile& f = p.surface();
  const double k = p.medium().k_minus();
  const double r = distance(f.point(s), f.point(t));
  SurfaceGreen out;
  out.rem = remainder_full(p.medium(), s - t, f.f(s) + f.f(t), p.green_options());
  out.value = 0.25 * kI * specfun::hankel1(0, k * r) + out.rem.r;
  out.phi_radial = -0.25 * kI * k * specfun::hankel1(1, k * r) / r;
  return out;
}

}  // namespace

Complex kernel_dbvp_raw(const BoundaryProblem& p, double s, double t) {
  if (s == t) throw SingularityError("kernel_dbvp_raw: s == t");
  const SurfaceProfile& f = p.surface();
  const SurfaceGreen g = surface_green(p, s, t);
  // grad_y R = (-R_delta, R_v); times |x'(t)| nu(y) = (f'(t), -1)
  const Complex dn = g.phi_radial * f.chord_normal(s, t) - g.rem.r_delta * f.df(t) - g.rem.r_v;
  return 2.0 * (dn + kI * p.eta() * g.value * f.speed(t));
}

Complex kernel_ibvp_raw(const BoundaryProblem& p, double s, double t) {
  if (s == t) throw SingularityError("kernel_ibvp_raw: s == t");
  const SurfaceProfile& f = p.surface();
  const SurfaceGreen g = surface_green(p, s, t);
  // grad_x R = (R_delta, R_v); (x - y).(f'(s), -1) = chord_normal(t, s)
  const Complex dn = (g.phi_radial * f.chord_normal(t, s) + g.rem.r_delta * f.df(s) - g.rem.r_v) / f.speed(s);
  return 2.0 * (kI * p.medium().k_minus() * p.beta(s) * g.value - dn) * f.speed(t);
}

Complex kernel_raw(const BoundaryProblem& p, double s, double t) {
  return p.kind() == ProblemKind::dirichlet ? kernel_dbvp_raw(p, s, t) : kernel_ibvp_raw(p, s, t);
}

Complex diag_L2_dbvp(const BoundaryProblem& p, double s) {
  const double d = p.surface().df(s);
  return -p.surface().d2f(s) / (2.0 * kPi * (1.0 + d * d));
}

Complex diag_M2_dbvp(const BoundaryProblem& p, double s) {
  const double sp = p.surface().speed(s);
  const double k = p.medium().k_minus();
  return (0.5 * kI - kEulerGamma / kPi - std::log(0.5 * k * sp) / kPi) * sp;
}

Complex diag_L2_ibvp(const BoundaryProblem& p, double s) { return -diag_L2_dbvp(p, s); }

Complex diag_M2_ibvp(const BoundaryProblem& p, double s) {
  const double sp = p.surface().speed(s);
  const double k = p.medium().k_minus();
  const double inv2pi = 1.0 / (2.0 * kPi);
  return 2.0 * kI * k * p.beta(s) *
         (0.25 * kI - inv2pi * std::log(0.5 * k) - inv2pi * kEulerGamma - inv2pi * std::log(sp)) * sp;
}

LogParts log_parts(const BoundaryProblem& p, double s, double t, const RemainderValue& r) {
  const SurfaceProfile& f = p.surface();
  const double k = p.medium().k_minus();
  const double sp_t = f.speed(t);
  const bool dirichlet = p.kind() == ProblemKind::dirichlet;
  LogParts out;

  if (s == t) {
    if (dirichlet) {
      const Complex ieta = kI * p.eta();
      const Complex l3 = 2.0 * (-r.r_delta * f.df(t) - r.r_v);
      const Complex m3 = 2.0 * r.r * sp_t;
      out.a = ieta * (-sp_t / kPi);
      out.b = diag_L2_dbvp(p, s) + l3 + ieta * (diag_M2_dbvp(p, s) + m3);
    } else {
      const Complex ikb = kI * k * p.beta(s);
      const Complex l3 = -2.0 * (r.r_delta * f.df(s) - r.r_v);
      const Complex m3 = 2.0 * ikb * r.r * sp_t;
      out.a = -ikb * sp_t / kPi;
      out.b = diag_L2_ibvp(p, s) + l3 + diag_M2_ibvp(p, s) + m3;
    }
    return out;
  }

  const double d = t - s;
  const double slope = f.mean_slope(s, t);
  const double rr = std::abs(d) * std::sqrt(1.0 + slope * slope);
  const double ln_d = std::log(std::abs(d));
  const specfun::BesselSet bs = specfun::bessel_set(k * rr);
  const Complex h0(bs.j0, bs.y0);
  const Complex h1(bs.j1, bs.y1);

  if (dirichlet) {
    const double q = f.chord_normal(s, t);  // (y - x).nu(y) |x'(t)|
    const Complex ieta = kI * p.eta();
    const Complex l = -0.5 * kI * k * h1 * q / rr;
    const double l1 = k / kPi * bs.j1 * q / rr;
    const Complex m = 0.5 * kI * h0 * sp_t;
    const double m1 = -bs.j0 * sp_t / kPi;
    const Complex l3 = 2.0 * (-r.r_delta * f.df(t) - r.r_v);
    const Complex m3 = 2.0 * r.r * sp_t;
    out.a = l1 + ieta * m1;
    out.b = (l - l1 * ln_d) + l3 + ieta * ((m - m1 * ln_d) + m3);
  } else {
    const double sp_s = f.speed(s);
    const double ratio = sp_t / sp_s;
    const double qx = f.chord_normal(t, s);  // (x - y).nu(x) |x'(s)|
    const Complex ikb = kI * k * p.beta(s);
    const Complex l = 0.5 * kI * k * h1 * qx / rr * ratio;
    const double l1 = -k / kPi * bs.j1 * qx / rr * ratio;
    const Complex m = 0.5 * kI * ikb * h0 * sp_t;
    const Complex m1 = -ikb * bs.j0 * sp_t / kPi;
    const Complex l3 = -2.0 * (r.r_delta * f.df(s) - r.r_v) * ratio;
    const Complex m3 = 2.0 * ikb * r.r * sp_t;
    out.a = l1 + m1;
    out.b = (l - l1 * ln_d) + l3 + (m - m1 * ln_d) + m3;
  }
  return out;
}

SplitValue split_at(const BoundaryProblem& p, double s, double t, const RemainderValue& r) {
  const LogParts lp = log_parts(p, s, t, r);
  if (s == t) return {kPi * lp.a, lp.b};
  const double d = t - s;
  const double chi = cutoff_chi(d);
  const double ln_d = std::log(std::abs(d));
  if (chi == 0.0) return {0.0, lp.a * ln_d + lp.b};
  // (1/2) ln(4 sin^2(d/2)) = ln|d| + ln(sin(d/2) / (d/2))
  const double half = 0.5 * d;
  const double ln_sinc = std::log(std::sin(half) / half);
  return {kPi * lp.a * chi, lp.a * (ln_d * (1.0 - chi) - chi * ln_sinc) + lp.b};
}

namespace {

KernelSplit make_split(const BoundaryProblem& p) {
  // The closures hold a copy of the problem so the split can outlive it.
  auto shared = std::make_shared<const BoundaryProblem>(p);
  auto value = [shared](double s, double t) {
    const SurfaceProfile& f = shared->surface();
    const RemainderValue r = remainder_full(shared->medium(), s - t, f.f(s) + f.f(t), shared->green_options());
    return split_at(*shared, s, t, r);
  };
  KernelSplit ks;
  ks.A = [value](double s, double t) {
    if (std::abs(s - t) >= kPi) return Complex{};
    return value(s, t).A;
  };
  ks.B = [value](double s, double t) { return value(s, t).B; };
  return ks;
}

}  // namespace

KernelSplit split_dbvp(const BoundaryProblem& p) {
  if (p.kind() != ProblemKind::dirichlet) throw DomainError("split_dbvp: problem is not a Dirichlet problem");
  return make_split(p);
}

KernelSplit split_ibvp(const BoundaryProblem& p) {
  if (p.kind() != ProblemKind::impedance) throw DomainError("split_ibvp: problem is not an impedance problem");
  return make_split(p);
}

Complex rhs_dbvp(const BoundaryProblem& p, double s) { return -2.0 * p.data(s); }
Complex rhs_ibvp(const BoundaryProblem& p, double s) { return 2.0 * p.data(s); }
Complex rhs(const BoundaryProblem& p, double s) {
  return p.kind() == ProblemKind::dirichlet ? rhs_dbvp(p, s) : rhs_ibvp(p, s);
}

}  // namespace twolayer
