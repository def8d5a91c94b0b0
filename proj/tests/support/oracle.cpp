#include "oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {
namespace {

constexpr double pi = 3.14159265358979323846;

// A point on the real axis that remembers its exact offsets from the ends of
// the current integration interval, so xi - k stays accurate when k is an end.
struct Node {
  double xi;
  double a;
  double b;
  double from_a;  // xi - a
  double to_b;    // b - xi
};

double offset(const Node& n, double k) {
  if (k == n.a) return n.from_a;
  if (k == n.b) return -n.to_b;
  return n.xi - k;
}

// Real-axis vertical wavenumber: -i sqrt(k^2 - xi^2) inside, sqrt(xi^2 - k^2) outside.
cplx s_real(const Node& n, double k) {
  const double d = offset(n, k);
  if (d >= 0.0) return {std::sqrt(d * (n.xi + k)), 0.0};
  return {0.0, -std::sqrt(-d * (n.xi + k))};
}

using Fn = std::function<cplx(const Node&)>;

cplx integrate_ts(const Fn& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  // Boost passes xc = a - x near the left end and b - x near the right end.
  auto node = [a, b](double x, double xc) {
    Node n{x, a, b, x - a, b - x};
    if (xc < 0.0) n.from_a = -xc;
    else if (xc > 0.0) n.to_b = xc;
    return n;
  };
  const double re = ts.integrate([&](double x, double xc) { return f(node(x, xc)).real(); }, a, b, 1e-14);
  const double im = ts.integrate([&](double x, double xc) { return f(node(x, xc)).imag(); }, a, b, 1e-14);
  return {re, im};
}

cplx integrate_gk(const Fn& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto node = [a, b](double x) { return Node{x, a, b, x - a, b - x}; };
  const double re = GK::integrate([&](double x) { return f(node(x)).real(); }, a, b, 12, 1e-14);
  const double im = GK::integrate([&](double x) { return f(node(x)).imag(); }, a, b, 12, 1e-14);
  return {re, im};
}

// int_0^inf f(xi) cos(xi delta) d xi with square-root singularities at kmin and
// kmax and exponential decay at rate `decay`.
cplx half_line(const Fn& g, double kmin, double kmax, double delta, double decay) {
  auto f = [&](const Node& n) { return g(n) * std::cos(n.xi * delta); };
  cplx sum = integrate_ts(f, 0.0, kmin) + integrate_ts(f, kmin, kmax) + integrate_ts(f, kmax, kmax + 1.0);
  const double end = kmax + 1.0 + 40.0 / decay;
  const double len = std::min(1.0, pi / std::max(std::abs(delta), 1e-300));
  for (double a = kmax + 1.0; a < end; a += len) sum += integrate_gk(f, a, std::min(a + len, end));
  return sum;
}

cplx reflected_below(double kp, double km, double delta, double v) {
  auto g = [&](const Node& xi) {
    const cplx sp = s_real(xi, kp);
    const cplx sm = s_real(xi, km);
    return (sm - sp) / ((sp + sm) * sm) * std::exp(sm * v);
  };
  return half_line(g, std::min(kp, km), std::max(kp, km), delta, -v) / (2.0 * pi);
}

cplx reflected_above(double kp, double km, double delta, double w) {
  auto g = [&](const Node& xi) {
    const cplx sp = s_real(xi, kp);
    const cplx sm = s_real(xi, km);
    return (sp - sm) / ((sp + sm) * sp) * std::exp(-sp * w);
  };
  return half_line(g, std::min(kp, km), std::max(kp, km), delta, w) / (2.0 * pi);
}

// p above, q below.
cplx transmitted(double kp, double km, double delta, double p2, double q2) {
  auto g = [&](const Node& xi) {
    const cplx sp = s_real(xi, kp);
    const cplx sm = s_real(xi, km);
    return std::exp(-sp * p2 + sm * q2) / (sp + sm);
  };
  return half_line(g, std::min(kp, km), std::max(kp, km), delta, p2 - q2) / pi;
}

}  // namespace

cplx phi(double k, double x1, double x2, double y1, double y2) {
  const double r = std::hypot(x1 - y1, x2 - y2);
  return cplx(0.0, 0.25) * cplx(std::cyl_bessel_j(0.0, k * r), std::cyl_neumann(0.0, k * r));
}

cplx green(double kp, double km, double x1, double x2, double y1, double y2) {
  const double delta = x1 - y1;
  if (x2 >= 0.0 && y2 >= 0.0) {
    if (x2 + y2 < 0.05) throw std::invalid_argument("oracle: points too close to the interface");
    return phi(kp, x1, x2, y1, y2) + reflected_above(kp, km, delta, x2 + y2);
  }
  if (x2 < 0.0 && y2 < 0.0) {
    if (x2 + y2 > -0.05) throw std::invalid_argument("oracle: points too close to the interface");
    return phi(km, x1, x2, y1, y2) + reflected_below(kp, km, delta, x2 + y2);
  }
  if (x2 >= 0.0) return transmitted(kp, km, delta, x2, y2);
  return transmitted(kp, km, -delta, y2, x2);
}

cplx remainder(double kp, double km, double x1, double x2, double y1, double y2) {
  if (!(x2 < 0.0 && y2 < 0.0)) throw std::invalid_argument("oracle: remainder needs two points below");
  return reflected_below(kp, km, x1 - y1, x2 + y2);
}

}  // namespace oracle
