#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "twolayer/errors.hpp"
#include "twolayer/potentials.hpp"
#include "twolayer/specfun.hpp"

using namespace twolayer;

namespace {

BoundaryProblem point_problem(ProblemKind kind) {
  const MediumPair m(2.7, 3.5);
  const SurfaceProfile s = SurfaceProfile::builtin("gamma1");
  if (kind == ProblemKind::dirichlet) return BoundaryProblem::dirichlet(m, s, PointSource{{1.0, -1.3}});
  return BoundaryProblem::impedance(m, s, PointSource{{1.0, -1.3}}, [](double) { return Complex(1.0); });
}

BoundaryProblem plane_problem(ProblemKind kind, double kp, double km) {
  const MediumPair m(kp, km);
  const SurfaceProfile s = SurfaceProfile::builtin("gamma2");
  if (kind == ProblemKind::dirichlet) return BoundaryProblem::dirichlet(m, s, PlaneWave{4 * kPi / 3});
  return BoundaryProblem::impedance(m, s, PlaneWave{4 * kPi / 3}, [](double) { return Complex(1.0); });
}

DensitySolution constant_density(const Grid& g, ProblemKind kind, Complex value) {
  return DensitySolution{g, Eigen::VectorXcd::Constant(g.size(), value), kind, 0.0, 1.0};
}

}  // namespace

TEST_CASE("zero density and linearity") {
  const Grid g(4);
  for (ProblemKind kind : {ProblemKind::dirichlet, ProblemKind::impedance}) {
    const BoundaryProblem p = point_problem(kind);
    CHECK(eval_scattered(constant_density(g, kind, 0.0), p, {0.3, 0.4}) == Complex(0.0));
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd a(g.size()), b(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      a(j) = Complex(nd(rng), nd(rng));
      b(j) = Complex(nd(rng), nd(rng));
    }
    const Complex alpha(0.7, -1.3);
    const DensitySolution sa{g, a, kind, 0.0, 1.0}, sb{g, b, kind, 0.0, 1.0}, sc{g, alpha * a + b, kind, 0.0, 1.0};
    for (Point2 x : {Point2{0.3, 0.4}, Point2{-2.0, -0.5}}) {
      const Complex lhs = eval_scattered(sc, p, x);
      const Complex rhs = alpha * eval_scattered(sa, p, x) + eval_scattered(sb, p, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("evaluation point checks") {
  const Grid g(4);
  const BoundaryProblem p = point_problem(ProblemKind::dirichlet);
  const DensitySolution sol = constant_density(g, ProblemKind::dirichlet, 1.0);
  const SurfaceProfile& s = p.surface();
  CHECK_THROWS_AS(eval_scattered(sol, p, {1.0, s.f(1.0) - 0.1}), DomainError);
  CHECK_THROWS_AS(eval_scattered(sol, p, {1.0, s.f(1.0) + 1e-8}), NearSingularityError);
  const DensitySolution wrong = constant_density(g, ProblemKind::impedance, 1.0);
  CHECK_THROWS(eval_scattered_dbvp(wrong, p, {0.0, 0.5}));
  CHECK(surface_distance(s, g, {1.0, s.f(1.0) + 0.05}) <= 0.05 + 1e-12);
  const FieldSample near = total_field(p, sol, {1.0, s.f(1.0) + 5e-3});
  CHECK(near.near_surface);
  CHECK(near.region == Region::lower);
  const FieldSample far = total_field(p, sol, {1.0, 0.5});
  CHECK_FALSE(far.near_surface);
  CHECK(far.region == Region::upper);
  CHECK(far.total == far.incident + far.scattered);
}

TEST_CASE("four-wave exact solution") {
  struct Row {
    double kp, km;
    ProblemKind kind;
    Complex exact;
  };
  const Row rows[] = {
      {2.7, 3.5, ProblemKind::dirichlet, {0.737691867188743, 0.215552888696214}},
      {2.7, 3.5, ProblemKind::impedance, {0.643898669829883, -0.508543039062194}},
      {3.5, 2.7, ProblemKind::dirichlet, {0.347332742418633, -2.094506667524657}},
      {3.5, 2.7, ProblemKind::impedance, {0.301680817549291, -1.296995588516340}},
  };
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (const Row& r : rows) {
    const MediumPair m(r.kp, r.km);
    const FourWaveSolution w = four_wave_exact(m, 4 * kPi / 3, r.kind);
    CHECK(std::abs(w.value({1.0, -0.2}) - r.exact) < 1e-12);
    for (int i = 0; i < 10; ++i) {
      const double x1 = ux(rng);
      // interface: value and normal derivative continuous
      const Complex jump = w.value({x1, 1e-300}) - w.value({x1, -1e-300});
      CHECK(std::abs(jump) < 1e-12);
      const Complex djump = w.gradient({x1, 1e-300}).c2 - w.gradient({x1, -1e-300}).c2;
      CHECK(std::abs(djump) < 1e-12 * r.km);
      const Complex on = w.value({x1, -1.0});
      if (r.kind == ProblemKind::dirichlet) {
        CHECK(std::abs(on) < 1e-12);
      } else {
        // nu = (0, -1)
        const Complex bc = -w.gradient({x1, -1.0}).c2 - kI * r.km * on;
        CHECK(std::abs(bc) < 1e-12);
      }
    }
  }
  // transmitted wave grazing along the interface
  const double crit = specfun::critical_angle(3.5, 2.7);
  CHECK_THROWS_AS(four_wave_exact(MediumPair(3.5, 2.7), kPi + crit, ProblemKind::dirichlet), DegenerateError);
  CHECK_NOTHROW(four_wave_exact(MediumPair(3.5, 2.7), kPi + crit + 1e-3, ProblemKind::dirichlet));
}

TEST_CASE("point-source reference") {
  const MediumPair m(2.7, 3.5);
  const SurfaceProfile s = SurfaceProfile::builtin("gamma1");
  const Point2 y0{1.0, -1.3}, x{0.6, 0.56};
  CHECK(point_source_exact(m, s, y0, x) == -green(m, x, y0));
  CHECK_THROWS_AS(point_source_exact(m, s, {1.0, -0.1}, x), DomainError);
  CHECK_THROWS_AS(point_source_exact(m, s, y0, {1.0, -1.5}), DomainError);
}

TEST_CASE("point-source solutions reproduce the reference field") {
  for (ProblemKind kind : {ProblemKind::dirichlet, ProblemKind::impedance}) {
    const BoundaryProblem p = point_problem(kind);
    const DensitySolution sol = solve(assemble(p, Grid(8)));
    const Point2 x{0.6, 0.56};
    const Complex exact = point_source_exact(p.medium(), p.surface(), {1.0, -1.3}, x);
    const double rel = std::abs(eval_scattered(sol, p, x) - exact) / std::abs(exact);
    MESSAGE(to_string(kind) << " relative error " << rel);
    CHECK(rel < 1e-2);
  }
}

TEST_CASE("scattered field decays away from the source region") {
  const BoundaryProblem p = point_problem(ProblemKind::dirichlet);
  const DensitySolution sol = solve(assemble(p, Grid(8)));
  std::vector<double> lx, lu;
  for (double d : {4.0, 6.0, 8.0, 12.0}) {
    lx.push_back(std::log(d));
    lu.push_back(std::log(std::abs(eval_scattered(sol, p, {1.0 + d, 0.5}))));
  }
  const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4, my = (lu[0] + lu[1] + lu[2] + lu[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (lx[i] - mx) * (lu[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  MESSAGE("decay slope " << sxy / sxx);
  CHECK(sxy / sxx < -1.0);
}

TEST_CASE("boundary residuals for plane-wave incidence") {
  const Grid g(32);
  {
    const BoundaryProblem p = plane_problem(ProblemKind::dirichlet, 3.5, 2.7);
    const DensitySolution sol = solve(assemble(p, g));
    double worst = 0.0, scale = 0.0;
    for (double s : {-3.3, -1.01, 0.05, 0.77, 2.9}) {
      const Complex u0 = p.incident(p.surface().point(s));
      worst = std::max(worst, std::abs(u0 + boundary_trace(p, sol, s)));
      scale = std::max(scale, std::abs(u0));
    }
    MESSAGE("Dirichlet boundary residual " << worst / scale);
    CHECK(worst <= 1e-2 * scale);
  }
  {
    const BoundaryProblem p = plane_problem(ProblemKind::impedance, 2.7, 3.5);
    const DensitySolution sol = solve(assemble(p, g));
    double worst = 0.0, scale = 0.0;
    for (double s : {-3.3, -1.01, 0.05, 0.77, 2.9}) {
      worst = std::max(worst, std::abs(boundary_trace(p, sol, s) - p.data(s)));
      scale = std::max(scale, std::abs(p.data(s)));
    }
    MESSAGE("impedance boundary residual " << worst / scale);
    CHECK(worst <= 5e-2 * scale);
  }
}

TEST_CASE("field CSV") {
  std::vector<FieldSample> v(2);
  v[0].x = {0.0, 1.0};
  v[0].total = Complex(1.0, -2.0);
  v[1].x = {0.0, -0.5};
  v[1].region = Region::lower;
  v[1].near_surface = true;
  std::ostringstream os;
  write_field_csv(os, v);
  const std::string text = os.str();
  CHECK(text.rfind("x1,x2,re,im,tag\n", 0) == 0);
  CHECK(text.find("upper") != std::string::npos);
  CHECK(text.find("lower+near") != std::string::npos);
}
