#include "twolayer/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "twolayer/errors.hpp"
#include "twolayer/parallel.hpp"
#include "twolayer/remainder_table.hpp"

namespace twolayer {

Grid::Grid(int N, double half_width) : n_(N), h_(0.0), half_width_(half_width), offset_(0) {
  if (N < 1) throw ConfigError("Grid: N must be at least 1");
  if (!std::isfinite(half_width) || !(half_width > 0.0)) throw ConfigError("Grid: A must be positive and finite");
  h_ = kPi / N;
  const double k = half_width / h_;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 * std::max(1.0, k) || kr < 1.0)
    throw ConfigError("Grid: A / h must be a positive integer (A a multiple of pi / N)");
  offset_ = static_cast<long>(kr);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = node(j);
  return t;
}

double log_weight(int N, double s, double t_j) {
  const double d = s - t_j;
  double sum = 0.0;
  for (int m = 1; m < N; ++m) sum += std::cos(m * d) / m;
  sum += std::cos(N * d) / (2.0 * N);
  return -sum / N;
}

std::vector<double> log_weight_table(int N) {
  // Evaluate at k h directly rather than through log_weight, so that cos(m k h)
  // uses the exact integer product m k modulo 2N.
  const std::size_t period = 2 * static_cast<std::size_t>(N);
  std::vector<double> w(period);
  const double h = kPi / N;
  for (std::size_t k = 0; k < period; ++k) {
    double sum = 0.0;
    for (int m = 1; m < N; ++m) sum += std::cos(static_cast<double>((m * k) % period) * h) / m;
    sum += std::cos(static_cast<double>((N * k) % period) * h) / (2.0 * N);
    w[k] = -sum / N;
  }
  return w;
}

namespace {

std::size_t wrap(long diff, std::size_t period) {
  const long p = static_cast<long>(period);
  return static_cast<std::size_t>(((diff % p) + p) % p);
}

}  // namespace

LinearSystem assemble(const BoundaryProblem& p, const Grid& grid, const AssemblyOptions& opts) {
  const std::size_t n = grid.size();
  const SurfaceProfile& surf = p.surface();
  std::vector<double> t = grid.nodes();
  std::vector<double> ft(n);
  for (std::size_t j = 0; j < n; ++j) ft[j] = surf.f(t[j]);
  const auto [lo, hi] = std::minmax_element(ft.begin(), ft.end());
  const RemainderTable table(p.medium(), grid.h(), n, 2.0 * *lo, 2.0 * *hi, p.green_options(), opts.threads);
  const std::vector<double> w = log_weight_table(grid.N());
  const double h = grid.h();

  LinearSystem sys{Eigen::MatrixXcd(n, n), Eigen::VectorXcd(n), grid, p.kind()};
  parallel_for(n, opts.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long diff = static_cast<long>(i) - static_cast<long>(j);
      const RemainderValue r = table.at(diff, ft[i] + ft[j]);
      const SplitValue sv = split_at(p, t[i], t[j], r);
      const Complex alpha = w[wrap(diff, w.size())] * sv.A + h * sv.B;
      sys.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (i == j ? 1.0 : 0.0) - alpha;
    }
    sys.rhs(static_cast<Eigen::Index>(i)) = rhs(p, t[i]);
  });
  return sys;
}

LinearSystem assemble_split(const KernelSplit& split, const std::function<Complex(double)>& rhs_fn, const Grid& grid,
                            ProblemKind kind, const AssemblyOptions& opts) {
  const std::size_t n = grid.size();
  const std::vector<double> w = log_weight_table(grid.N());
  const double h = grid.h();
  LinearSystem sys{Eigen::MatrixXcd(n, n), Eigen::VectorXcd(n), grid, kind};
  parallel_for(n, opts.threads, [&](std::size_t i) {
    const double s = grid.node(i);
    for (std::size_t j = 0; j < n; ++j) {
      const long diff = static_cast<long>(i) - static_cast<long>(j);
      const double tj = grid.node(j);
      Complex alpha = h * split.B(s, tj);
      if (std::abs(s - tj) < split.support_radius) alpha += w[wrap(diff, w.size())] * split.A(s, tj);
      sys.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (i == j ? 1.0 : 0.0) - alpha;
    }
    sys.rhs(static_cast<Eigen::Index>(i)) = rhs_fn(s);
  });
  return sys;
}

DensitySolution solve(const LinearSystem& system) {
  const Eigen::Index n = system.matrix.rows();
  if (n == 0 || system.matrix.cols() != n || system.rhs.size() != n)
    throw SolverError("solve: system must be square and match the right-hand side");
  if (!system.matrix.allFinite() || !system.rhs.allFinite()) throw SolverError("solve: non-finite entries in the system");

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.matrix);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) throw SolverError("solve: matrix is singular or ill-conditioned (estimate " + std::to_string(cond) + ")");

  Eigen::VectorXcd x = lu.solve(system.rhs);
  const double scale = std::max(1.0, system.rhs.cwiseAbs().maxCoeff());
  double res = (system.rhs - system.matrix * x).cwiseAbs().maxCoeff();
  for (int step = 0; step < 3 && res > 1e-14 * scale; ++step) {
    const Eigen::VectorXcd r = system.rhs - system.matrix * x;
    const Eigen::VectorXcd x_new = x + lu.solve(r);
    const double res_new = (system.rhs - system.matrix * x_new).cwiseAbs().maxCoeff();
    if (!(res_new < res)) break;
    x = x_new;
    res = res_new;
  }
  if (!(res <= 1e-10 * scale)) throw SolverError("solve: residual " + std::to_string(res) + " above tolerance");
  return DensitySolution{system.grid, std::move(x), system.kind, res, cond};
}

Complex interpolate_density(const DensitySolution& sol, double s, int points) {
  const Grid& g = sol.grid;
  const double a = g.half_width();
  if (!(s >= -a - 1e-12 && s <= a + 1e-12)) throw DomainError("interpolate_density: s outside [-A, A]");
  const long n = static_cast<long>(g.size());
  const long m = std::clamp<long>(points, 1, n);
  const double pos = s / g.h() + static_cast<double>(g.offset());
  long first = static_cast<long>(std::floor(pos)) - (m - 1) / 2;
  first = std::clamp<long>(first, 0, n - m);
  // Exact hit on a node: return the nodal value.
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-13) return sol.values(static_cast<Eigen::Index>(nearest));
  Complex out{};
  for (long j = first; j < first + m; ++j) {
    double l = 1.0;
    const double tj = g.node(static_cast<std::size_t>(j));
    for (long k = first; k < first + m; ++k)
      if (k != j) l *= (s - g.node(static_cast<std::size_t>(k))) / (tj - g.node(static_cast<std::size_t>(k)));
    out += l * sol.values(j);
  }
  return out;
}

void write_density_csv(std::ostream& os, const DensitySolution& sol, int precision) {
  os << "j,t_j,re,im\n" << std::setprecision(precision);
  for (std::size_t j = 0; j < sol.grid.size(); ++j) {
    const Complex v = sol.values(static_cast<Eigen::Index>(j));
    os << j << ',' << sol.grid.node(j) << ',' << v.real() << ',' << v.imag() << '\n';
  }
}

}  // namespace twolayer
