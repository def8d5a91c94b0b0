#include "twolayer/remainder_table.hpp"

#include <algorithm>
#include <cmath>

#include "twolayer/errors.hpp"
#include "twolayer/parallel.hpp"
#include "twolayer/quadrature.hpp"

namespace twolayer {

int RemainderTable::choose_v_nodes(double v_min, double v_max) {
  const double half = 0.5 * (v_max - v_min);
  if (half <= 1e-14 * std::abs(v_min)) return 1;
  // R(., v) is analytic for Re v < 0, so the Bernstein ellipse through v = 0
  // sets the convergence rate. Use its square root as a safety margin.
  const double u = std::abs(0.5 * (v_max + v_min)) / half;
  const double rho = u + std::sqrt(u * u - 1.0);
  const double rate = std::log(std::sqrt(rho));
  const int n = static_cast<int>(std::ceil(std::log(1e14) / rate)) + 2;
  return std::clamp(n, 4, 64);
}

RemainderTable::RemainderTable(const MediumPair& m, double h, std::size_t count, double v_min, double v_max,
                               const GreenOptions& opts, unsigned threads)
    : count_(count), v_lo_(v_min), v_hi_(v_max) {
  if (!(v_max < 0.0) || v_min > v_max) throw DomainError("RemainderTable: need v_min <= v_max < 0");
  if (!(h > 0.0)) throw DomainError("RemainderTable: step must be positive");
  n_v_ = choose_v_nodes(v_min, v_max);
  const std::vector<double> nodes =
      n_v_ == 1 ? std::vector<double>{0.5 * (v_min + v_max)} : quad::chebyshev_nodes(n_v_, v_min, v_max);
  coeffs_.assign(count * 3 * static_cast<std::size_t>(n_v_), Complex{});
  parallel_for(count, threads, [&](std::size_t mi) {
    std::vector<RemainderValue> vals(static_cast<std::size_t>(n_v_));
    remainder_batch(m, static_cast<double>(mi) * h, nodes, opts, vals.data());
    std::vector<Complex> flat(3 * vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
      flat[3 * k] = vals[k].r;
      flat[3 * k + 1] = vals[k].r_delta;
      flat[3 * k + 2] = vals[k].r_v;
    }
    for (std::size_t c = 0; c < 3; ++c) {
      Complex* out = &coeffs_[(mi * 3 + c) * static_cast<std::size_t>(n_v_)];
      quad::chebyshev_coefficients(flat.data() + c, n_v_, 3, out);
    }
  });
}

RemainderValue RemainderTable::at(long index_diff, double v) const {
  const std::size_t mi = static_cast<std::size_t>(index_diff < 0 ? -index_diff : index_diff);
  if (mi >= count_) throw DomainError("RemainderTable: index outside the table");
  const double tol = 1e-12 * (1.0 + std::abs(v));
  if (v < v_lo_ - tol || v > v_hi_ + tol) throw DomainError("RemainderTable: v outside the tabulated range");
  const double u = n_v_ == 1 ? 0.0 : std::clamp((2.0 * v - (v_lo_ + v_hi_)) / (v_hi_ - v_lo_), -1.0, 1.0);
  const std::size_t n = static_cast<std::size_t>(n_v_);
  const Complex* c = &coeffs_[mi * 3 * n];
  RemainderValue out;
  out.r = quad::chebyshev_eval(c, n_v_, u);
  out.r_delta = quad::chebyshev_eval(c + n, n_v_, u);
  out.r_v = quad::chebyshev_eval(c + 2 * n, n_v_, u);
  // R_delta is odd in delta.
  if (index_diff < 0) out.r_delta = -out.r_delta;
  return out;
}

}  // namespace twolayer
