#pragma once

#include <cmath>
#include <vector>

#include "cvples/field.hpp"

namespace cvples {

/// Pairwise-tree sum of the partials, in place. Fixed association order, so
/// the result does not depend on thread count.
inline double pairwise_sum(std::vector<double>& p) {
  std::size_t m = p.size();
  if (m == 0) return 0.0;
  while (m > 1) {
    const std::size_t half = (m + 1) / 2;
    for (std::size_t i = 0; i + half < m; ++i) p[i] += p[i + half];
    m = half;
  }
  return p[0];
}

/// Deterministic global sum: one partial per k-plane (accumulated in index
/// order), combined by a pairwise tree. `term(i, j, k)` supplies the addend.
template <class F>
double det_sum(const Grid& g, F&& term) {
  std::vector<double> partial(g.nz, 0.0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.nz; ++k) {
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) acc += term(i, j, k);
    partial[k] = acc;
  }
  return pairwise_sum(partial);
}

inline double volume_average(const ScalarField& f) {
  const Grid& g = f.grid();
  return det_sum(g, [&](int i, int j, int k) { return f(i, j, k); }) / double(g.size());
}

template <class F>
double max_over(const Grid& g, F&& term) {
  std::vector<double> partial(g.nz);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.nz; ++k) {
    double m = term(0, 0, k);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) m = std::fmax(m, term(i, j, k));
    partial[k] = m;
  }
  double m = partial[0];
  for (double v : partial) m = std::fmax(m, v);
  return m;
}

inline double max_value(const ScalarField& f) {
  return max_over(f.grid(), [&](int i, int j, int k) { return f(i, j, k); });
}

inline double min_value(const ScalarField& f) {
  return -max_over(f.grid(), [&](int i, int j, int k) { return -f(i, j, k); });
}

inline double max_abs(const ScalarField& f) {
  return max_over(f.grid(), [&](int i, int j, int k) { return std::fabs(f(i, j, k)); });
}

}  // namespace cvples
