#include "twolayer/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include <boost/math/tools/minima.hpp>

#include "twolayer/errors.hpp"
#include "twolayer/parallel.hpp"

namespace twolayer {

const char* to_string(Region r) { return r == Region::upper ? "upper" : "lower"; }

double surface_distance(const SurfaceProfile& surf, const Grid& grid, Point2 x) {
  const std::size_t n = grid.size();
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = distance(x, surf.point(grid.node(j)));
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  const double t0 = grid.node(best);
  auto dist2 = [&](double t) {
    const double dx = x.x1 - t;
    const double dy = x.x2 - surf.f(t);
    return dx * dx + dy * dy;
  };
  const auto [t_min, d2] = boost::math::tools::brent_find_minima(dist2, t0 - grid.h(), t0 + grid.h(), 40);
  (void)t_min;
  return std::min(best_d, std::sqrt(d2));
}

namespace {

enum class Quantity { dbvp_value, ibvp_value, ibvp_grad1, ibvp_grad2 };

void check_point(const BoundaryProblem& p, const DensitySolution& sol, Point2 x) {
  if (sol.kind != p.kind()) throw DomainError("field evaluation: density and problem kinds differ");
  if (static_cast<std::size_t>(sol.values.size()) != sol.grid.size())
    throw DomainError("field evaluation: density length does not match its grid");
  const SurfaceProfile& surf = p.surface();
  if (!(x.x2 > surf.f(x.x1))) throw DomainError("field evaluation: point is not above the surface");
  if (surface_distance(surf, sol.grid, x) <= 1e-6)
    throw NearSingularityError("field evaluation: point within 1e-6 of the surface; the plain rule is not valid there");
}

// Sums h * term_j * psi_j. Terms are computed in parallel and reduced in
// index order so results do not depend on the thread count.
template <class Term>
Complex reduce(const DensitySolution& sol, unsigned threads, Term term) {
  const std::size_t n = sol.grid.size();
  std::vector<Complex> parts(n);
  parallel_for(n, threads, [&](std::size_t j) {
    parts[j] = term(sol.grid.node(j)) * sol.values(static_cast<Eigen::Index>(j));
  });
  Complex sum{};
  for (const Complex& c : parts) sum += c;
  return sol.grid.h() * sum;
}

}  // namespace

Complex eval_scattered_dbvp(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts) {
  if (p.kind() != ProblemKind::dirichlet) throw DomainError("eval_scattered_dbvp: not a Dirichlet problem");
  check_point(p, sol, x);
  const SurfaceProfile& surf = p.surface();
  const Complex ieta = kI * p.eta();
  return reduce(sol, opts.threads, [&](double t) {
    const GreenValue g = green_full(p.medium(), x, surf.point(t), p.green_options());
    // |y'(t)| dG/dnu(y) = grad_y G . (f'(t), -1)
    return g.grad_y.dot(surf.df(t), -1.0) + ieta * g.value * surf.speed(t);
  });
}

Complex eval_scattered_ibvp(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts) {
  if (p.kind() != ProblemKind::impedance) throw DomainError("eval_scattered_ibvp: not an impedance problem");
  check_point(p, sol, x);
  const SurfaceProfile& surf = p.surface();
  return reduce(sol, opts.threads, [&](double t) {
    return green(p.medium(), x, surf.point(t), p.green_options()) * surf.speed(t);
  });
}

Complex eval_scattered(const DensitySolution& sol, const BoundaryProblem& p, Point2 x, const FieldOptions& opts) {
  return p.kind() == ProblemKind::dirichlet ? eval_scattered_dbvp(sol, p, x, opts) : eval_scattered_ibvp(sol, p, x, opts);
}

CVec2 eval_scattered_gradient(const DensitySolution& sol, const BoundaryProblem& p, Point2 x,
                              const FieldOptions& opts) {
  if (p.kind() != ProblemKind::impedance)
    throw DomainError("eval_scattered_gradient: only the single-layer (impedance) field is supported");
  if (x.x2 == 0.0) throw DomainError("eval_scattered_gradient: point on the interface");
  check_point(p, sol, x);
  const SurfaceProfile& surf = p.surface();
  const std::size_t n = sol.grid.size();
  std::vector<CVec2> parts(n);
  parallel_for(n, opts.threads, [&](std::size_t j) {
    const double t = sol.grid.node(j);
    const CVec2 g = grad_green_x(p.medium(), x, surf.point(t), p.green_options());
    parts[j] = (surf.speed(t) * sol.values(static_cast<Eigen::Index>(j))) * g;
  });
  CVec2 sum;
  for (const CVec2& c : parts) sum += c;
  return Complex(sol.grid.h()) * sum;
}

FieldSample total_field(const BoundaryProblem& p, const DensitySolution& sol, Point2 x, const FieldOptions& opts) {
  FieldSample out;
  out.x = x;
  out.region = x.x2 >= 0.0 ? Region::upper : Region::lower;
  out.scattered = eval_scattered(sol, p, x, opts);
  out.incident = p.incident(x);
  out.total = out.incident + out.scattered;
  out.near_surface = surface_distance(p.surface(), sol.grid, x) < 1e-2;
  return out;
}

Complex boundary_trace(const BoundaryProblem& p, const DensitySolution& sol, double s) {
  if (sol.kind != p.kind()) throw DomainError("boundary_trace: density and problem kinds differ");
  const Grid& g = sol.grid;
  const SurfaceProfile& surf = p.surface();
  const double fs = surf.f(s);
  Complex k_psi{};
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double t = g.node(j);
    const RemainderValue r = remainder_full(p.medium(), s - t, fs + surf.f(t), p.green_options());
    const SplitValue sv = split_at(p, s, t, r);
    Complex alpha = g.h() * sv.B;
    if (std::abs(s - t) < kPi) alpha += log_weight(g.N(), s, t) * sv.A;
    k_psi += alpha * sol.values(static_cast<Eigen::Index>(j));
  }
  // (I - K) psi = -2 g (Dirichlet) or +2 g (impedance).
  const Complex jump = interpolate_density(sol, s) - k_psi;
  return p.kind() == ProblemKind::dirichlet ? -0.5 * jump : 0.5 * jump;
}

Complex FourWaveSolution::value(Point2 x) const {
  if (x.x2 >= 0.0) {
    const double k = medium.k_plus();
    return a * std::exp(kI * k * (x.x1 * dir[0] + x.x2 * dir[1])) +
           b * std::exp(kI * k * (x.x1 * dir_r[0] + x.x2 * dir_r[1]));
  }
  const double k = medium.k_minus();
  return c * std::exp(kI * k * (x.x1 * dir_t[0] + x.x2 * dir_t[1])) +
         d * std::exp(kI * k * (x.x1 * dir_n[0] + x.x2 * dir_n[1]));
}

CVec2 FourWaveSolution::gradient(Point2 x) const {
  auto wave = [&](Complex amp, double k, const std::array<Complex, 2>& dd) {
    const Complex e = amp * std::exp(kI * k * (x.x1 * dd[0] + x.x2 * dd[1]));
    return CVec2{kI * k * dd[0] * e, kI * k * dd[1] * e};
  };
  if (x.x2 >= 0.0) return wave(a, medium.k_plus(), dir) + wave(b, medium.k_plus(), dir_r);
  return wave(c, medium.k_minus(), dir_t) + wave(d, medium.k_minus(), dir_n);
}

FourWaveSolution four_wave_exact(const MediumPair& m, double theta_d, ProblemKind kind, Complex beta0, double height) {
  if (!(height < 0.0)) throw DomainError("four_wave_exact: the plane must lie below the interface");
  const PlaneWaveReference ref(m, theta_d);
  FourWaveSolution sol{m, theta_d, kind, beta0, height};
  const double c0 = std::cos(theta_d);
  const double s0 = std::sin(theta_d);
  sol.dir = {c0, s0};
  sol.dir_r = {c0, -s0};
  sol.dir_t = ref.d_t();
  sol.dir_n = {sol.dir_t[0], -sol.dir_t[1]};

  const double kp = m.k_plus();
  const double km = m.k_minus();
  const Complex dt2 = sol.dir_t[1];
  // At the critical angle the two lower waves coincide; rounding in cos
  // leaves |dt2| around 1e-8 there.
  if (std::abs(dt2) < 1e-7) throw DegenerateError("four_wave_exact: transmitted wave at grazing");
  const Complex ep = std::exp(kI * km * height * dt2);
  const Complex em = std::exp(-kI * km * height * dt2);

  // Unknowns (B, C, D); the common factor exp(i k+ x1 cos th) is dropped.
  Eigen::Matrix3cd mat;
  Eigen::Vector3cd rhs;
  mat << 1.0, -1.0, -1.0,                               //
      -kI * kp * s0, -kI * km * dt2, kI * km * dt2,      //
      0.0, 0.0, 0.0;
  rhs << -1.0, -kI * kp * s0, 0.0;
  if (kind == ProblemKind::dirichlet) {
    mat(2, 1) = ep;
    mat(2, 2) = em;
  } else {
    // nu = (0, -1): -du/dx2 - i k- beta0 u = 0
    const Complex ikb = kI * km * beta0;
    mat(2, 1) = -kI * km * dt2 * ep - ikb * ep;
    mat(2, 2) = kI * km * dt2 * em - ikb * em;
  }
  const Eigen::FullPivLU<Eigen::Matrix3cd> lu(mat);
  if (!lu.isInvertible() || lu.rcond() < 1e-13) throw DegenerateError("four_wave_exact: singular coefficient system");
  const Eigen::Vector3cd x = lu.solve(rhs);
  sol.b = x(0);
  sol.c = x(1);
  sol.d = x(2);
  return sol;
}

Complex point_source_exact(const MediumPair& m, const SurfaceProfile& surf, Point2 y0, Point2 x,
                           const GreenOptions& opts) {
  if (!(y0.x2 < surf.f(y0.x1))) throw DomainError("point_source_exact: source must lie below the surface");
  if (!(x.x2 > surf.f(x.x1))) throw DomainError("point_source_exact: evaluation point must lie above the surface");
  return -green(m, x, y0, opts);
}

void write_field_csv(std::ostream& os, std::span<const FieldSample> samples, int precision) {
  os << "x1,x2,re,im,tag\n" << std::setprecision(precision);
  for (const FieldSample& s : samples) {
    os << s.x.x1 << ',' << s.x.x2 << ',' << s.total.real() << ',' << s.total.imag() << ',' << to_string(s.region)
       << (s.near_surface ? "+near" : "") << '\n';
  }
}

}  // namespace twolayer
