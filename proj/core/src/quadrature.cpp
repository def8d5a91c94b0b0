#include "twolayer/quadrature.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>

namespace twolayer::quad {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

// Kronrod abscissae are stored as 0, x1, ..., x7 (ascending); the embedded
// Gauss nodes are 0, x2, x4, x6.
struct PanelRule {
  std::array<double, 15> offsets{};
  std::array<double, 15> kronrod{};
  std::array<double, 15> gauss{};

  PanelRule() {
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    offsets[0] = 0.0;
    kronrod[0] = wk[0];
    gauss[0] = wg[0];
    for (int i = 1; i < 8; ++i) {
      offsets[2 * i - 1] = -xk[i];
      offsets[2 * i] = xk[i];
      kronrod[2 * i - 1] = kronrod[2 * i] = wk[i];
      const double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
      gauss[2 * i - 1] = gauss[2 * i] = g;
    }
  }
};

const PanelRule& rule() {
  static const PanelRule r;
  return r;
}

struct PanelState {
  double a;
  double b;
  double error;
  std::size_t slot;  // offset into the value store
};

struct ByError {
  bool operator()(const PanelState& l, const PanelState& r) const { return l.error < r.error; }
};

// Applies G7K15 on [a, b]; writes the Kronrod estimate to out and returns the
// max-component |K - G|.
double apply_rule(const VectorIntegrand& f, std::size_t dim, double a, double b, Complex* out,
                  std::vector<Complex>& scratch, std::vector<Complex>& gauss_sum) {
  const PanelRule& r = rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::fill(out, out + dim, Complex{});
  std::fill(gauss_sum.begin(), gauss_sum.end(), Complex{});
  for (int i = 0; i < 15; ++i) {
    f(mid + half * r.offsets[i], scratch.data());
    const double wk = r.kronrod[i];
    const double wg = r.gauss[i];
    for (std::size_t c = 0; c < dim; ++c) {
      out[c] += wk * scratch[c];
      if (wg != 0.0) gauss_sum[c] += wg * scratch[c];
    }
  }
  double err = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    out[c] *= half;
    err = std::max(err, std::abs(out[c] - half * gauss_sum[c]));
  }
  return err;
}

}  // namespace

AdaptiveResult integrate_vector(const VectorIntegrand& f, std::size_t dim, std::span<const Panel> initial,
                                const AdaptiveOptions& opts, Complex* result) {
  AdaptiveResult res;
  std::fill(result, result + dim, Complex{});
  if (initial.empty()) {
    res.converged = true;
    return res;
  }

  std::vector<Complex> store;
  store.reserve(dim * initial.size() * 2);
  std::vector<Complex> scratch(dim);
  std::vector<Complex> gauss_sum(dim);
  std::vector<std::size_t> free_slots;
  std::priority_queue<PanelState, std::vector<PanelState>, ByError> heap;

  auto new_slot = [&]() -> std::size_t {
    if (!free_slots.empty()) {
      const std::size_t s = free_slots.back();
      free_slots.pop_back();
      return s;
    }
    const std::size_t s = store.size();
    store.resize(store.size() + dim);
    return s;
  };

  double total_err = 0.0;
  for (const Panel& p : initial) {
    const std::size_t slot = new_slot();
    const double err = apply_rule(f, dim, p.a, p.b, store.data() + slot, scratch, gauss_sum);
    for (std::size_t c = 0; c < dim; ++c) result[c] += store[slot + c];
    total_err += err;
    heap.push({p.a, p.b, err, slot});
  }
  res.evaluations = 15L * static_cast<long>(initial.size());

  auto target = [&]() {
    double mag = 0.0;
    for (std::size_t c = 0; c < dim; ++c) mag = std::max(mag, std::abs(result[c]));
    return std::max(opts.abs_tol, opts.rel_tol * mag);
  };

  std::vector<Complex> left(dim);
  std::vector<Complex> right(dim);
  while (total_err > target()) {
    if (static_cast<int>(heap.size()) >= opts.max_panels) break;
    const PanelState worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // panel at machine resolution
    heap.pop();
    const double el = apply_rule(f, dim, worst.a, mid, left.data(), scratch, gauss_sum);
    const double er = apply_rule(f, dim, mid, worst.b, right.data(), scratch, gauss_sum);
    res.evaluations += 30;
    const Complex* old = store.data() + worst.slot;
    for (std::size_t c = 0; c < dim; ++c) result[c] += left[c] + right[c] - old[c];
    total_err += el + er - worst.error;
    free_slots.push_back(worst.slot);
    const std::size_t sl = new_slot();
    std::copy(left.begin(), left.end(), store.begin() + static_cast<std::ptrdiff_t>(sl));
    heap.push({worst.a, mid, el, sl});
    const std::size_t sr = new_slot();
    std::copy(right.begin(), right.end(), store.begin() + static_cast<std::ptrdiff_t>(sr));
    heap.push({mid, worst.b, er, sr});
  }

  // Re-sum from the panel store so the running updates do not leave rounding
  // drift in the result.
  std::fill(result, result + dim, Complex{});
  double err_sum = 0.0;
  res.panels = static_cast<int>(heap.size());
  while (!heap.empty()) {
    const PanelState p = heap.top();
    heap.pop();
    for (std::size_t c = 0; c < dim; ++c) result[c] += store[p.slot + c];
    err_sum += p.error;
  }
  res.error_estimate = err_sum;
  res.converged = err_sum <= target();
  return res;
}

std::vector<Panel> uniform_panels(double a, double b, double max_len) {
  std::vector<Panel> out;
  if (!(b > a)) return out;
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
  const double len = (b - a) / n;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back({a + i * len, i + 1 == n ? b : a + (i + 1) * len});
  return out;
}

std::vector<double> chebyshev_nodes(int n, double a, double b) {
  std::vector<double> x(static_cast<std::size_t>(n));
  if (n == 1) {
    x[0] = 0.5 * (a + b);
    return x;
  }
  for (int i = 0; i < n; ++i) {
    const double u = -std::cos(kPi * (i + 0.5) / n);
    x[static_cast<std::size_t>(i)] = 0.5 * (a + b) + 0.5 * (b - a) * u;
  }
  return x;
}

void chebyshev_coefficients(const Complex* values, int n, std::size_t stride, Complex* coeffs) {
  for (int k = 0; k < n; ++k) {
    Complex sum{};
    for (int i = 0; i < n; ++i) {
      // T_k(u_i) with u_i = -cos(theta_i)
      const double theta = kPi * (i + 0.5) / n;
      const double tk = std::cos(k * (kPi - theta));
      sum += values[static_cast<std::size_t>(i) * stride] * tk;
    }
    coeffs[k] = (k == 0 ? 1.0 : 2.0) * sum / static_cast<double>(n);
  }
}

}  // namespace twolayer::quad
