#pragma once

// Vector-valued adaptive Gauss-Kronrod integration and Chebyshev helpers.
// Every integrand in the library returns several complex components that share
// the expensive part of the evaluation, so the integrator works on whole
// vectors and refines a panel if any component is unresolved.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "twolayer/types.hpp"

namespace twolayer::quad {

struct Panel {
  double a = 0.0;
  double b = 0.0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_panels = 40000;
};

struct AdaptiveResult {
  double error_estimate = 0.0;
  long evaluations = 0;
  int panels = 0;
  bool converged = false;
};

/// Writes `dim` values of the integrand at parameter tau into `out`.
using VectorIntegrand = std::function<void(double tau, Complex* out)>;

/// Integrates f over the union of the initial panels with global adaptive
/// G7K15 bisection. The error norm is the max over components; iteration stops
/// once the summed estimate is below max(abs_tol, rel_tol * max_c |I_c|).
/// `result` must hold `dim` entries.
AdaptiveResult integrate_vector(const VectorIntegrand& f, std::size_t dim, std::span<const Panel> initial,
                                const AdaptiveOptions& opts, Complex* result);

/// Splits [a, b] into panels no longer than max_len.
std::vector<Panel> uniform_panels(double a, double b, double max_len);

/// n Chebyshev points of the first kind mapped to [a, b], ascending.
std::vector<double> chebyshev_nodes(int n, double a, double b);

/// Coefficients c_k with p(x) = sum_k c_k T_k(u), u the image of x in [-1, 1],
/// interpolating values given at chebyshev_nodes(n, a, b). Stride lets callers
/// pass interleaved data: value i lives at values[i * stride].
void chebyshev_coefficients(const Complex* values, int n, std::size_t stride, Complex* coeffs);

/// Clenshaw evaluation at u in [-1, 1].
inline Complex chebyshev_eval(const Complex* coeffs, int n, double u) {
  Complex b1{};
  Complex b2{};
  const double two_u = 2.0 * u;
  for (int k = n - 1; k >= 1; --k) {
    const Complex b0 = coeffs[k] + two_u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + u * b1 - b2;
}

}  // namespace twolayer::quad
