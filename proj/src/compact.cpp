#include "cvples/compact.hpp"

#include <cmath>

#include "cvples/error.hpp"
#include "sweep.hpp"

namespace cvples {

namespace {
constexpr double kPivotTiny = 1e-300;
}

CyclicConstSolver::CyclicConstSolver(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 3) fail(errc::axis_too_small, "cyclic systems need at least 3 unknowns");
  invpiv_.resize(n);
  cprime_.resize(n - 1);

  // Sherman-Morrison: A = T + u v^T with u = (-1, 0, ..., 0, alpha),
  // v = (1, 0, ..., 0, -alpha); T is tridiagonal with first/last diagonal
  // entries adjusted to 2 and 1 + alpha^2.
  std::vector<double> piv(n);
  piv[0] = 2.0;
  cprime_[0] = alpha / piv[0];
  for (int r = 1; r < n - 1; ++r) {
    piv[r] = 1.0 - alpha * cprime_[r - 1];
    if (std::fabs(piv[r]) < kPivotTiny) fail(errc::zero_pivot, "zero pivot in cyclic factorization");
    if (r < n - 1) cprime_[r] = alpha / piv[r];
  }
  piv[n - 1] = (1.0 + alpha * alpha) - alpha * cprime_[n - 2];
  if (std::fabs(piv[n - 1]) < kPivotTiny) fail(errc::zero_pivot, "zero pivot in cyclic factorization");
  for (int r = 0; r < n; ++r) invpiv_[r] = 1.0 / piv[r];

  // z = T^{-1} u
  zvec_.assign(n, 0.0);
  zvec_[0] = -1.0;
  zvec_[n - 1] = alpha;
  zvec_[0] *= invpiv_[0];
  for (int r = 1; r < n; ++r) zvec_[r] = (zvec_[r] - alpha * zvec_[r - 1]) * invpiv_[r];
  for (int r = n - 2; r >= 0; --r) zvec_[r] -= cprime_[r] * zvec_[r + 1];

  const double denom = 1.0 + zvec_[0] - alpha * zvec_[n - 1];
  if (std::fabs(denom) < kPivotTiny) fail(errc::zero_pivot, "singular cyclic correction");
  inv_denom_ = 1.0 / denom;
}

void CyclicConstSolver::solve_batch(double* x, int bn, int ldb) const {
  const int n = n_;
  const double a = alpha_;
  double* row = x;
  for (int b = 0; b < bn; ++b) row[b] *= invpiv_[0];
  for (int r = 1; r < n; ++r) {
    const double ip = invpiv_[r];
    double* cur = x + std::size_t(r) * ldb;
    const double* prev = cur - ldb;
    for (int b = 0; b < bn; ++b) cur[b] = (cur[b] - a * prev[b]) * ip;
  }
  for (int r = n - 2; r >= 0; --r) {
    const double cp = cprime_[r];
    double* cur = x + std::size_t(r) * ldb;
    const double* next = cur + ldb;
    for (int b = 0; b < bn; ++b) cur[b] -= cp * next[b];
  }
  double fac[detail::kSweepBlock];
  const double* last = x + std::size_t(n - 1) * ldb;
  for (int b = 0; b < bn; ++b) fac[b] = (x[b] - a * last[b]) * inv_denom_;
  for (int r = 0; r < n; ++r) {
    const double zr = zvec_[r];
    double* cur = x + std::size_t(r) * ldb;
    for (int b = 0; b < bn; ++b) cur[b] -= zr * fac[b];
  }
}

std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys,
                                             std::span<const double> rhs) {
  const std::size_t n = sys.size();
  if (n < 3) fail(errc::zero_pivot, "cyclic systems need at least 3 unknowns");
  if (sys.sub.size() != n || sys.super.size() != n || rhs.size() != n)
    fail(errc::invalid_argument, "inconsistent system sizes");

  const double corner_top = sys.sub[0];      // A(0, n-1)
  const double corner_bot = sys.super[n - 1];  // A(n-1, 0)
  const double gamma = -sys.diag[0];

  std::vector<double> diag(sys.diag.begin(), sys.diag.end());
  diag[0] -= gamma;
  diag[n - 1] -= corner_top * corner_bot / gamma;

  auto thomas = [&](std::vector<double> d) {
    std::vector<double> c(n - 1);
    double piv = diag[0];
    if (std::fabs(piv) < kPivotTiny) fail(errc::zero_pivot, "zero pivot");
    c[0] = sys.super[0] / piv;
    d[0] /= piv;
    for (std::size_t r = 1; r < n; ++r) {
      piv = diag[r] - sys.sub[r] * c[r - 1];
      if (std::fabs(piv) < kPivotTiny) fail(errc::zero_pivot, "zero pivot");
      if (r < n - 1) c[r] = sys.super[r] / piv;
      d[r] = (d[r] - sys.sub[r] * d[r - 1]) / piv;
    }
    for (std::size_t r = n - 1; r-- > 0;) d[r] -= c[r] * d[r + 1];
    return d;
  };

  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = corner_bot;
  std::vector<double> y = thomas(std::vector<double>(rhs.begin(), rhs.end()));
  std::vector<double> z = thomas(std::move(u));

  const double vy = y[0] + corner_top / gamma * y[n - 1];
  const double vz = z[0] + corner_top / gamma * z[n - 1];
  const double denom = 1.0 + vz;
  if (std::fabs(denom) < kPivotTiny) fail(errc::zero_pivot, "singular cyclic correction");
  const double fac = vy / denom;
  for (std::size_t r = 0; r < n; ++r) y[r] -= fac * z[r];
  return y;
}

Derivatives::Derivatives(const Grid& g, CompactScheme scheme) : grid_(g), scheme_(scheme) {
  for (int axis = 0; axis < 3; ++axis)
    solver_[axis] = CyclicConstSolver(g.n(axis), scheme_.lhs_alpha);
}

void Derivatives::ddx(const ScalarField& f, int axis, ScalarField& out) const {
  if (axis < 0 || axis > 2) fail(errc::invalid_argument, "axis must be 0, 1 or 2");
  const double h = grid_.spacing(axis);
  detail::StencilSpec sten;
  sten.antisymmetric = true;
  sten.half_width = 2;
  sten.w[1] = scheme_.rhs_a / (2.0 * h);
  sten.w[2] = scheme_.rhs_b / (4.0 * h);
  detail::sweep_axis(grid_, axis, f.data(), out.data(), sten, &solver_[axis]);
}

ScalarField Derivatives::ddx(const ScalarField& f, int axis) const {
  ScalarField out(grid_);
  ddx(f, axis, out);
  return out;
}

void Derivatives::gradient(const VectorField& u, TensorField& out) const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ddx(u.comp(i), j, out.comp(i, j));
}

TensorField Derivatives::gradient(const VectorField& u) const {
  TensorField out(grid_);
  gradient(u, out);
  return out;
}

void Derivatives::divergence(const VectorField& u, ScalarField& out) const {
  ScalarField tmp(grid_);
  ddx(u.comp(0), 0, out);
  for (int axis = 1; axis < 3; ++axis) {
    ddx(u.comp(axis), axis, tmp);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += tmp[m];
  }
}

SolutionFilter::SolutionFilter(const Grid& g, double alpha) : grid_(g), alpha_(alpha) {
  if (!(alpha > 0.25 && alpha < 0.5))
    fail(errc::bad_alpha, "solution filter strength must lie in (0.25, 0.5)");
  // Eighth-order implicit filter weights; the pair weight w[m] multiplies
  // f_{i+m} + f_{i-m} directly.
  w_[0] = (93.0 + 70.0 * alpha) / 128.0;
  w_[1] = (7.0 + 18.0 * alpha) / 32.0;
  w_[2] = (-7.0 + 14.0 * alpha) / 64.0;
  w_[3] = (1.0 - 2.0 * alpha) / 32.0;
  w_[4] = (-1.0 + 2.0 * alpha) / 256.0;
  for (int axis = 0; axis < 3; ++axis)
    solver_[axis] = CyclicConstSolver(g.n(axis), alpha);
}

double SolutionFilter::transfer_gain(double alpha, double k_delta) {
  const double a0 = (93.0 + 70.0 * alpha) / 128.0;
  const double a1 = (7.0 + 18.0 * alpha) / 16.0;
  const double a2 = (-7.0 + 14.0 * alpha) / 32.0;
  const double a3 = (1.0 - 2.0 * alpha) / 16.0;
  const double a4 = (-1.0 + 2.0 * alpha) / 128.0;
  const double num = a0 + a1 * std::cos(k_delta) + a2 * std::cos(2.0 * k_delta) +
                     a3 * std::cos(3.0 * k_delta) + a4 * std::cos(4.0 * k_delta);
  return num / (1.0 + 2.0 * alpha * std::cos(k_delta));
}

void SolutionFilter::apply_inplace(ScalarField& f) const {
  detail::StencilSpec sten;
  sten.antisymmetric = false;
  sten.half_width = 4;
  sten.w[0] = w_[0];
  for (int m = 1; m <= 4; ++m) sten.w[m] = w_[m];
  for (int axis = 0; axis < 3; ++axis)
    detail::sweep_axis(grid_, axis, f.data(), f.data(), sten, &solver_[axis]);
}

ScalarField solution_filter(const ScalarField& f, double strength_alpha) {
  SolutionFilter filt(f.grid(), strength_alpha);
  ScalarField out = f;
  filt.apply_inplace(out);
  return out;
}

}  // namespace cvples
