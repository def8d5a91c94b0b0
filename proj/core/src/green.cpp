#include "twolayer/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "twolayer/errors.hpp"
#include "twolayer/quadrature.hpp"
#include "twolayer/specfun.hpp"

namespace twolayer {

using specfun::detail::vertical_wavenumber_fast;

MediumPair::MediumPair(double k_plus, double k_minus) : k_plus_(k_plus), k_minus_(k_minus) {
  if (!std::isfinite(k_plus) || !std::isfinite(k_minus) || !(k_plus > 0.0) || !(k_minus > 0.0)) {
    throw DomainError("MediumPair: wavenumbers must be finite and positive");
  }
  if (k_plus == k_minus) throw DomainError("MediumPair: k_plus and k_minus must differ");
  theta_c_ = specfun::critical_angle(k_plus, k_minus);
}

namespace {

// Deformed contour in the right half of the xi-plane:
//   [0, c - a] on the real axis, the lower half of the ellipse with centre c and
//   semi-axes (a, b), then [c + a, xi_end] on the real axis again.
// A single real parameter tau runs over all three pieces; on the ellipse piece
// tau maps linearly to the angle.
struct Contour {
  double c = 0.0;
  double a = 0.0;
  double b = 0.0;

  double left() const { return c - a; }
  double right() const { return c + a; }

  void map(double tau, Complex& xi, Complex& jac) const {
    if (tau <= left() || tau >= right()) {
      xi = Complex(tau, 0.0);
      jac = 1.0;
      return;
    }
    const double scale = kPi / (2.0 * a);
    const double phi = scale * (tau - left());
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    xi = Complex(c - a * cp, -b * sp);
    jac = scale * Complex(a * sp, -b * cp);
  }
};

Contour make_contour(const MediumPair& m, double delta_abs, double vert) {
  const double kmin = m.k_min();
  const double kmax = m.k_max();
  Contour ct;
  ct.c = 0.5 * (kmin + kmax);
  ct.a = std::max(0.4 * kmax, 0.5 * (kmax - kmin) + 0.25 * kmin);
  // The detour depth is limited so that |cos(xi delta)| and the vertical
  // exponentials stay O(1) on the ellipse.
  ct.b = std::min(0.2 * kmin, 0.5 / (1.0 + delta_abs + vert));
  return ct;
}

// Integrand contract: g(xi, cos(xi delta), sin(xi delta), out). The driver
// passes cos = sin = 1 at real xi to obtain a non-oscillating envelope.
template <class Integrand>
void contour_integrate(const MediumPair& m, double delta, double vert, std::size_t dim, Integrand&& g,
                       const GreenOptions& opts, Complex* out, const char* what) {
  const double delta_abs = std::abs(delta);
  const Contour ct = make_contour(m, delta_abs, vert);

  std::vector<Complex> buf(dim);
  auto envelope = [&](double xi) {
    g(Complex(xi, 0.0), Complex(1.0), Complex(1.0), buf.data());
    double e = 0.0;
    for (const Complex& z : buf) e = std::max(e, std::abs(z));
    return e;
  };

  // March out until the remaining tail is negligible. env * xi bounds the tail
  // for any decay at least as fast as xi^-2.
  const double tail_tol = 0.1 * opts.abs_tol;
  double step = 1.0;
  double xi_end = ct.right() + step;
  for (;;) {
    const double bound = envelope(xi_end) * xi_end;
    if (bound < tail_tol) break;
    if (xi_end > opts.xi_cap) {
      throw AccuracyError(std::string(what) + ": integrand tail does not decay before the xi cap", bound);
    }
    step *= 2.0;
    xi_end = ct.right() + step;
  }

  const double panel_len = delta_abs > 0.0 ? std::min(2.0, 2.0 * kPi / delta_abs) : 2.0;
  std::vector<quad::Panel> panels = quad::uniform_panels(0.0, ct.left(), panel_len);
  const int n_ellipse = static_cast<int>(std::ceil(ct.a * delta_abs)) + 8;
  const double ell_len = 2.0 * ct.a / n_ellipse;
  for (int i = 0; i < n_ellipse; ++i) {
    panels.push_back({ct.left() + i * ell_len, i + 1 == n_ellipse ? ct.right() : ct.left() + (i + 1) * ell_len});
  }
  for (const quad::Panel& p : quad::uniform_panels(ct.right(), xi_end, panel_len)) panels.push_back(p);

  auto f = [&](double tau, Complex* o) {
    Complex xi;
    Complex jac;
    ct.map(tau, xi, jac);
    const Complex arg = xi * delta;
    Complex cv;
    Complex sv;
    if (arg.imag() == 0.0) {
      cv = std::cos(arg.real());
      sv = std::sin(arg.real());
    } else {
      cv = std::cos(arg);
      sv = std::sin(arg);
    }
    g(xi, cv, sv, o);
    for (std::size_t c = 0; c < dim; ++c) o[c] *= jac;
  };

  quad::AdaptiveOptions qo;
  qo.abs_tol = opts.abs_tol;
  qo.rel_tol = opts.rel_tol;
  qo.max_panels = opts.max_panels;
  const quad::AdaptiveResult r = quad::integrate_vector(f, dim, panels, qo, out);
  if (!r.converged) throw AccuracyError(std::string(what) + ": contour quadrature did not converge", r.error_estimate);
}

constexpr double kInvTwoPi = 1.0 / (2.0 * kPi);

// Same-side reflected term for both points above the interface, w = x2 + y2 >= 0.
// Components: value, d/d delta, d/dx2, d/dy2.
void reflected_upper(const MediumPair& m, double delta, double w, const GreenOptions& opts, Complex* out) {
  const double kp = m.k_plus();
  const double km = m.k_minus();
  const double num = km * km - kp * kp;
  auto g = [&](Complex xi, Complex cv, Complex sv, Complex* o) {
    const Complex sp = vertical_wavenumber_fast(xi, kp);
    const Complex sm = vertical_wavenumber_fast(xi, km);
    const Complex sum = sp + sm;
    const Complex base = kInvTwoPi * num / (sum * sum * sp) * std::exp(-sp * w);
    o[0] = base * cv;
    o[1] = -base * xi * sv;
    o[2] = -base * sp * cv;
    o[3] = o[2];
  };
  contour_integrate(m, delta, w, 4, g, opts, out, "green (upper reflected term)");
}

// Case with p above (p2 >= 0) and q below (q2 < 0). The free-space solution
// with the blended wavenumber k* is subtracted inside the integral and added
// back in closed form, which leaves an integrand decaying like xi^-3 even when
// both points approach the interface.
GreenValue transmitted(const MediumPair& m, Point2 p, Point2 q, const GreenOptions& opts) {
  const double kp = m.k_plus();
  const double km = m.k_minus();
  const double delta = p.x1 - q.x1;
  const double dist = p.x2 - q.x2;
  const double up = p.x2;
  const double down = -q.x2;
  const double kstar = std::sqrt((kp * kp * up + km * km * down) / (up + down));
  auto g = [&](Complex xi, Complex cv, Complex sv, Complex* o) {
    const Complex sp = vertical_wavenumber_fast(xi, kp);
    const Complex sm = vertical_wavenumber_fast(xi, km);
    const Complex ss = vertical_wavenumber_fast(xi, kstar);
    const Complex e = std::exp(-sp * p.x2 + sm * q.x2) / (sp + sm);
    const Complex pp = std::exp(-ss * dist) / (2.0 * ss);
    const Complex diff = (e - pp) / kPi;
    o[0] = diff * cv;
    o[1] = -diff * xi * sv;
    o[2] = (-sp * e + ss * pp) / kPi * cv;
    o[3] = (sm * e - ss * pp) / kPi * cv;
  };
  Complex r[4];
  contour_integrate(m, delta, dist, 4, g, opts, r, "green (transmitted term)");
  GreenValue out = phi_free_full(kstar, p, q);
  out.value += r[0];
  out.grad_x += CVec2{r[1], r[2]};
  out.grad_y += CVec2{-r[1], r[3]};
  return out;
}

void check_point(Point2 p, const char* name) {
  if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

Complex phi_free(double k, Point2 x, Point2 y) {
  const double r = distance(x, y);
  if (r == 0.0) throw SingularityError("phi_free: x and y coincide");
  return 0.25 * kI * specfun::hankel1(0, k * r);
}

GreenValue phi_free_full(double k, Point2 x, Point2 y) {
  const double r = distance(x, y);
  if (r == 0.0) throw SingularityError("phi_free: x and y coincide");
  const specfun::BesselSet b = specfun::bessel_set(k * r);
  GreenValue out;
  out.value = 0.25 * kI * Complex(b.j0, b.y0);
  // grad_x (i/4) H0(k r) = -(i k / 4) H1(k r) (x - y) / r
  const Complex f = -0.25 * kI * k * Complex(b.j1, b.y1) / r;
  out.grad_x = CVec2{f * (x.x1 - y.x1), f * (x.x2 - y.x2)};
  out.grad_y = CVec2{-out.grad_x.c1, -out.grad_x.c2};
  return out;
}

void remainder_batch(const MediumPair& m, double delta, std::span<const double> v, const GreenOptions& opts,
                     RemainderValue* out) {
  double vmax = -std::numeric_limits<double>::infinity();
  for (double vi : v) {
    if (!(vi < 0.0)) throw DomainError("green_remainder: both points must lie below the interface");
    vmax = std::max(vmax, vi);
  }
  const double kp = m.k_plus();
  const double km = m.k_minus();
  const double num = kp * kp - km * km;
  const std::size_t nv = v.size();
  auto g = [&](Complex xi, Complex cv, Complex sv, Complex* o) {
    const Complex sp = vertical_wavenumber_fast(xi, kp);
    const Complex sm = vertical_wavenumber_fast(xi, km);
    const Complex sum = sp + sm;
    const Complex f4 = kInvTwoPi * num / (sum * sum * sm);
    const Complex xs = -xi * sv;
    for (std::size_t k = 0; k < nv; ++k) {
      const Complex base = f4 * std::exp(sm * v[k]);
      o[3 * k] = base * cv;
      o[3 * k + 1] = base * xs;
      o[3 * k + 2] = base * sm * cv;
    }
  };
  std::vector<Complex> r(3 * nv);
  contour_integrate(m, delta, -vmax, 3 * nv, g, opts, r.data(), "green_remainder");
  for (std::size_t k = 0; k < nv; ++k) out[k] = {r[3 * k], r[3 * k + 1], r[3 * k + 2]};
}

RemainderValue remainder_full(const MediumPair& m, double delta, double v, const GreenOptions& opts) {
  RemainderValue out;
  const double vs[1] = {v};
  remainder_batch(m, delta, vs, opts, &out);
  return out;
}

Complex green_remainder(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts) {
  check_point(x, "x");
  check_point(y, "y");
  if (!(x.x2 < 0.0) || !(y.x2 < 0.0)) throw DomainError("green_remainder: both points must lie below the interface");
  return remainder_full(m, x.x1 - y.x1, x.x2 + y.x2, opts).r;
}

GreenValue green_full(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts) {
  check_point(x, "x");
  check_point(y, "y");
  if (x.x1 == y.x1 && x.x2 == y.x2) throw SingularityError("green: x and y coincide");
  const bool x_up = x.x2 >= 0.0;
  const bool y_up = y.x2 >= 0.0;
  const double delta = x.x1 - y.x1;

  if (x_up && y_up) {
    GreenValue out = phi_free_full(m.k_plus(), x, y);
    Complex r[4];
    reflected_upper(m, delta, x.x2 + y.x2, opts, r);
    out.value += r[0];
    out.grad_x += CVec2{r[1], r[2]};
    out.grad_y += CVec2{-r[1], r[3]};
    return out;
  }
  if (!x_up && !y_up) {
    GreenValue out = phi_free_full(m.k_minus(), x, y);
    const RemainderValue r = remainder_full(m, delta, x.x2 + y.x2, opts);
    out.value += r.r;
    out.grad_x += CVec2{r.r_delta, r.r_v};
    out.grad_y += CVec2{-r.r_delta, r.r_v};
    return out;
  }
  if (x_up) return transmitted(m, x, y, opts);
  // G(x, y) = G(y, x): evaluate with the roles exchanged and swap gradients.
  const GreenValue t = transmitted(m, y, x, opts);
  return {t.value, t.grad_y, t.grad_x};
}

Complex green(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts) {
  return green_full(m, x, y, opts).value;
}

CVec2 grad_green_x(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts) {
  if (x.x2 == 0.0) throw DomainError("grad_green_x: x lies on the interface");
  return green_full(m, x, y, opts).grad_x;
}

CVec2 grad_green_y(const MediumPair& m, Point2 x, Point2 y, const GreenOptions& opts) {
  if (y.x2 == 0.0) throw DomainError("grad_green_y: y lies on the interface");
  return green_full(m, x, y, opts).grad_y;
}

}  // namespace twolayer
