#pragma once

// Tabulated remainder R(delta, v) for pairs of points on an equispaced
// parameter grid. delta runs over multiples of the grid step, v = f(s) + f(t)
// over a fixed interval; R is even in delta and smooth in v, so each delta
// column is stored as Chebyshev series in v computed from one shared contour
// integral.

#include <cstddef>
#include <vector>

#include "twolayer/green.hpp"

namespace twolayer {

class RemainderTable {
 public:
  /// Covers delta = m h for |m| < count and v in [v_min, v_max] (both < 0).
  RemainderTable(const MediumPair& m, double h, std::size_t count, double v_min, double v_max,
                 const GreenOptions& opts = {}, unsigned threads = 0);

  /// R and derivatives at delta = index_diff * h.
  RemainderValue at(long index_diff, double v) const;

  int v_nodes() const { return n_v_; }
  std::size_t count() const { return count_; }

  /// Chebyshev degree + 1 needed for v in [v_min, v_max]; 1 for a point interval.
  static int choose_v_nodes(double v_min, double v_max);

 private:
  std::size_t count_;
  double v_lo_;
  double v_hi_;
  int n_v_;
  // coeffs_[(m * 3 + component) * n_v_ + k]
  std::vector<Complex> coeffs_;
};

}  // namespace twolayer
