#include <cmath>
#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "twolayer/errors.hpp"
#include "twolayer/nystrom.hpp"
#include "twolayer/potentials.hpp"

using namespace twolayer;

namespace {

BoundaryProblem ex1(ProblemKind kind, double kp = 2.7, double km = 3.5) {
  const MediumPair m(kp, km);
  const SurfaceProfile s = SurfaceProfile::builtin("gamma1");
  if (kind == ProblemKind::dirichlet) return BoundaryProblem::dirichlet(m, s, PointSource{{1.0, -1.3}});
  return BoundaryProblem::impedance(m, s, PointSource{{1.0, -1.3}}, [](double) { return Complex(1.0); });
}

}  // namespace

TEST_CASE("grid layout") {
  const Grid g(8);
  CHECK(g.h() == doctest::Approx(kPi / 8));
  CHECK(g.size() == 161);
  CHECK(g.node(0) == doctest::Approx(-10 * kPi));
  CHECK(g.node(g.size() - 1) == doctest::Approx(10 * kPi));
  CHECK(g.node(80) == 0.0);
  for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.node(j) - g.node(j - 1) == doctest::Approx(g.h()).epsilon(1e-12));
  CHECK(Grid(3, kPi).size() == 7);
  CHECK_THROWS_AS(Grid(0), ConfigError);
  CHECK_THROWS_AS(Grid(4, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid(4, -kPi), ConfigError);
}

TEST_CASE("log weights") {
  CHECK(log_weight(1, 0.3, 0.3) == doctest::Approx(-0.5).epsilon(1e-15));
  // N = 4, s - t = pi/4: direct long double summation
  long double ref = 0.0L;
  const long double d = 3.14159265358979323846L / 4.0L;
  for (int m = 1; m < 4; ++m) ref += std::cos(m * d) / m;
  ref += std::cos(4.0L * d) / 8.0L;
  ref = -ref / 4.0L;
  CHECK(std::abs(log_weight(4, kPi / 4, 0.0) - static_cast<double>(ref)) < 1e-15);
  for (int n : {1, 3, 8}) {
    const double h = kPi / n;
    for (double s : {0.0, 0.37, -1.2}) {
      double sum = 0.0;
      for (int j = 0; j < 2 * n; ++j) sum += log_weight(n, s, j * h);
      CHECK(std::abs(sum) < 1e-13);
    }
    const std::vector<double> w = log_weight_table(n);
    for (int k = 0; k < 2 * n; ++k) CHECK(std::abs(w[k] - log_weight(n, k * h, 0.0)) < 1e-14);
  }
}

TEST_CASE("trigonometric exactness of the log quadrature") {
  // int_0^{2pi} ln(4 sin^2((s - t)/2)) e^{imt} dt = 0 (m = 0), -(2pi/|m|) e^{ims}
  for (int n : {4, 8, 16})
    for (int m : {0, 1, 2}) {
      if (n <= m) continue;
      for (double s : {0.0, 0.41, 2.3}) {
        Complex q{};
        for (int j = 0; j < 2 * n; ++j) {
          const double t = j * kPi / n;
          q += 2.0 * kPi * log_weight(n, s, t) * std::exp(Complex(0.0, m * t));
        }
        const Complex exact = m == 0 ? Complex(0.0) : -(2.0 * kPi / m) * std::exp(Complex(0.0, m * s));
        CHECK(std::abs(q - exact) < 1e-12);
      }
    }
}

TEST_CASE("zero kernel gives the identity") {
  KernelSplit zero{[](double, double) { return Complex{}; }, [](double, double) { return Complex{}; }, kPi};
  const Grid g(2, kPi);
  const LinearSystem sys = assemble_split(zero, [](double s) { return Complex(s, 1.0); }, g, ProblemKind::dirichlet);
  CHECK((sys.matrix - Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);
  const DensitySolution sol = solve(sys);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(sol.values(j) == Complex(g.node(j), 1.0));
}

TEST_CASE("tabulated assembly matches the direct split") {
  for (ProblemKind kind : {ProblemKind::dirichlet, ProblemKind::impedance}) {
    const BoundaryProblem p = ex1(kind);
    const Grid g(2, 2 * kPi);
    const LinearSystem a = assemble(p, g);
    const KernelSplit ks = kind == ProblemKind::dirichlet ? split_dbvp(p) : split_ibvp(p);
    const LinearSystem b = assemble_split(ks, [&](double s) { return rhs(p, s); }, g, kind);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.rhs - b.rhs).cwiseAbs().maxCoeff() == 0.0);
    // diagonal structure
    const std::vector<double> w = log_weight_table(2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.node(i);
      const Complex expect = 1.0 - (w[0] * ks.A(t, t) + g.h() * ks.B(t, t));
      CHECK(std::abs(a.matrix(i, i) - expect) < 1e-10);
    }
  }
}

TEST_CASE("dense solve") {
  const Grid g(1, kPi);  // three nodes
  LinearSystem id{Eigen::MatrixXcd::Identity(3, 3), Eigen::VectorXcd::Zero(3), g, ProblemKind::dirichlet};
  id.rhs(1) = 1.0;
  const DensitySolution e = solve(id);
  CHECK(e.values(0) == Complex(0.0));
  CHECK(e.values(1) == Complex(1.0));
  CHECK(e.residual_norm == 0.0);

  // [[2, i], [1, 1]] x = (1, 0): inverse = [[1, -i], [-1, 2]] / (2 - i)
  LinearSystem two{Eigen::MatrixXcd(2, 2), Eigen::VectorXcd(2), g, ProblemKind::dirichlet};
  two.matrix << 2.0, kI, 1.0, 1.0;
  two.rhs << 1.0, 0.0;
  const DensitySolution x = solve(two);
  CHECK(std::abs(x.values(0) - 1.0 / (2.0 - kI)) < 1e-15);
  CHECK(std::abs(x.values(1) + 1.0 / (2.0 - kI)) < 1e-15);
  CHECK(x.condition_estimate > 1.0);

  LinearSystem sing{Eigen::MatrixXcd::Ones(2, 2), Eigen::VectorXcd::Ones(2), g, ProblemKind::dirichlet};
  CHECK_THROWS_AS(solve(sing), SolverError);
}

TEST_CASE("density self-convergence for the point-source Dirichlet problem") {
  const BoundaryProblem p = ex1(ProblemKind::dirichlet);
  std::vector<DensitySolution> sols;
  for (int n : {8, 16, 32}) {
    sols.push_back(solve(assemble(p, Grid(n))));
    CHECK(sols.back().residual_norm <= 1e-10);
  }
  auto diff = [](const DensitySolution& coarse, const DensitySolution& fine) {
    double d = 0.0;
    for (std::size_t j = 0; j < coarse.grid.size(); ++j) d = std::max(d, std::abs(coarse.values(j) - fine.values(2 * j)));
    return d;
  };
  const double d1 = diff(sols[0], sols[1]);
  const double d2 = diff(sols[1], sols[2]);
  MESSAGE("density differences " << d1 << " " << d2);
  CHECK(d2 < d1);
}

TEST_CASE("truncation monotonicity") {
  const BoundaryProblem p = ex1(ProblemKind::dirichlet);
  const Point2 x{0.6, 0.56};
  std::vector<Complex> u;
  for (double a : {5.0, 10.0, 20.0}) u.push_back(eval_scattered(solve(assemble(p, Grid(16, a * kPi))), p, x));
  const double c1 = std::abs(u[1] - u[0]);
  const double c2 = std::abs(u[2] - u[1]);
  MESSAGE("changes " << c1 << " " << c2);
  CHECK(c1 >= 1.5 * c2);
}

TEST_CASE("interpolation and CSV output") {
  const Grid g(4, kPi);
  LinearSystem sys{Eigen::MatrixXcd::Identity(g.size(), g.size()), Eigen::VectorXcd(g.size()), g, ProblemKind::impedance};
  for (std::size_t j = 0; j < g.size(); ++j) sys.rhs(j) = Complex(std::pow(g.node(j), 3), 1.0);
  const DensitySolution sol = solve(sys);
  CHECK(std::abs(interpolate_density(sol, 0.3) - Complex(0.027, 1.0)) < 1e-12);
  CHECK(interpolate_density(sol, g.node(2)) == sol.values(2));
  CHECK_THROWS_AS(interpolate_density(sol, 4.0), DomainError);
  std::ostringstream os;
  write_density_csv(os, sol);
  const std::string text = os.str();
  CHECK(text.rfind("j,t_j,re,im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(g.size()) + 1);
}
