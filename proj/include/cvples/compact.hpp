#pragma once

#include <array>
#include <span>
#include <vector>

#include "cvples/field.hpp"

namespace cvples {

/// Sixth-order tridiagonal interior scheme for periodic first derivatives:
/// alpha f'_{i-1} + f'_i + alpha f'_{i+1}
///   = a/(2h) (f_{i+1} - f_{i-1}) + b/(4h) (f_{i+2} - f_{i-2}).
struct CompactScheme {
  double lhs_alpha = 1.0 / 3.0;
  double rhs_a = 14.0 / 9.0;
  double rhs_b = 1.0 / 9.0;
  int order = 6;
};

/// Cyclic tridiagonal system. sub[i] = A(i, i-1) for i > 0 and sub[0] = A(0, n-1);
/// super[i] = A(i, i+1) for i < n-1 and super[n-1] = A(n-1, 0).
struct CyclicTridiagonalSystem {
  std::vector<double> sub, diag, super;

  std::size_t size() const { return diag.size(); }
};

/// Sherman-Morrison reduction to two standard Thomas solves.
/// Throws zero_pivot for degenerate systems (n < 3 or vanishing pivot).
std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys,
                                             std::span<const double> rhs);

/// Prefactored solver for the constant-coefficient cyclic rows (alpha, 1, alpha)
/// shared by every pencil of a given axis. solve_batch advances `bn` interleaved
/// systems stored row-major with leading dimension `ldb`.
class CyclicConstSolver {
 public:
  CyclicConstSolver() = default;
  CyclicConstSolver(int n, double alpha);

  void solve_batch(double* x, int bn, int ldb) const;
  void solve_inplace(double* x) const { solve_batch(x, 1, 1); }

  int size() const { return n_; }
  double alpha() const { return alpha_; }

 private:
  int n_ = 0;
  double alpha_ = 0.0;
  double inv_denom_ = 0.0;
  std::vector<double> invpiv_, cprime_, zvec_;
};

/// Compact first derivatives on a fixed grid; plans are prefactored per axis.
class Derivatives {
 public:
  explicit Derivatives(const Grid& g, CompactScheme scheme = {});

  void ddx(const ScalarField& f, int axis, ScalarField& out) const;
  ScalarField ddx(const ScalarField& f, int axis) const;

  /// out.comp(i, j) = du_i/dx_j
  void gradient(const VectorField& u, TensorField& out) const;
  TensorField gradient(const VectorField& u) const;

  void divergence(const VectorField& u, ScalarField& out) const;

  const Grid& grid() const { return grid_; }
  const CompactScheme& scheme() const { return scheme_; }

 private:
  Grid grid_;
  CompactScheme scheme_;
  std::array<CyclicConstSolver, 3> solver_;
};

/// Eighth-order implicit low-pass filter applied along all three axes,
/// G(0) = 1 and G(pi) = 0 for any strength. Used once per time step to keep
/// the collocated central scheme de-aliased. alpha must lie in (0.25, 0.5).
class SolutionFilter {
 public:
  SolutionFilter(const Grid& g, double alpha);

  void apply_inplace(ScalarField& f) const;

  double alpha() const { return alpha_; }

  /// Transfer function of the one-dimensional filter at wavenumber k*h.
  static double transfer_gain(double alpha, double k_delta);

 private:
  Grid grid_;
  double alpha_ = 0.0;
  std::array<double, 5> w_{};
  std::array<CyclicConstSolver, 3> solver_;
};

ScalarField solution_filter(const ScalarField& f, double strength_alpha);

}  // namespace cvples
