#pragma once

// Nystrom discretization on the truncated parameter line [-A, A] with step
// h = pi / N. The periodic logarithm is integrated with trigonometric
// weights; the smooth part with the trapezoidal rule.

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "twolayer/bie.hpp"

namespace twolayer {

class Grid {
 public:
  /// Throws ConfigError unless N >= 1, A > 0 and A / h is an integer.
  explicit Grid(int N, double half_width = 10.0 * kPi);

  int N() const { return n_; }
  double h() const { return h_; }
  double half_width() const { return half_width_; }
  /// Number of nodes, 2 A / h + 1.
  std::size_t size() const { return 2 * static_cast<std::size_t>(offset_) + 1; }
  /// t_j = (j - A/h) h, so t_j is exactly 0 at the centre node.
  double node(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(offset_)) * h_; }
  std::vector<double> nodes() const;
  long offset() const { return offset_; }

 private:
  int n_;
  double h_;
  double half_width_;
  long offset_;
};

/// R_j^N(s) = -(1/N) [sum_{m=1}^{N-1} cos(m (s - t_j)) / m + cos(N (s - t_j)) / (2N)].
double log_weight(int N, double s, double t_j);

/// Weights for node differences s - t_j = k h, k = 0 .. 2N-1 (periodic in k).
std::vector<double> log_weight_table(int N);

struct AssemblyOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

struct LinearSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  Grid grid;
  ProblemKind kind;
};

/// Collocation at the nodes: matrix = I - alpha with
/// alpha_ij = R_{i-j} A(t_i, t_j) + h B(t_i, t_j). The remainder is tabulated
/// once per index difference.
LinearSystem assemble(const BoundaryProblem& p, const Grid& grid, const AssemblyOptions& opts = {});

/// Same discretization for an arbitrary split and right-hand side.
LinearSystem assemble_split(const KernelSplit& split, const std::function<Complex(double)>& rhs, const Grid& grid,
                            ProblemKind kind, const AssemblyOptions& opts = {});

struct DensitySolution {
  Grid grid;
  Eigen::VectorXcd values;
  ProblemKind kind;
  double residual_norm = 0.0;
  double condition_estimate = 0.0;
};

/// Dense LU with a condition check (estimate above 1e12 raises SolverError)
/// and up to three steps of iterative refinement.
DensitySolution solve(const LinearSystem& system);

/// Lagrange interpolation of the density on `points` nodes around s.
/// s must lie in [-A, A].
Complex interpolate_density(const DensitySolution& sol, double s, int points = 8);

/// CSV with columns j, t_j, re, im.
void write_density_csv(std::ostream& os, const DensitySolution& sol, int precision = 15);

}  // namespace twolayer
