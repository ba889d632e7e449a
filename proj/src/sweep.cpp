#include "sweep.hpp"

#include <cstring>

namespace cvples::detail {

namespace {

struct AxisMap {
  int n;                  // line length
  std::size_t line_stride;
  std::size_t batch_stride;
  int outer;              // number of outer planes (parallel loop)
  int batch_extent;       // nodes available for batching per outer plane
};

AxisMap axis_map(const Grid& g, int axis) {
  switch (axis) {
    case 0: return {g.nx, 1, std::size_t(g.nx), g.nz, g.ny};
    case 1: return {g.ny, std::size_t(g.nx), 1, g.nz, g.nx};
    default: return {g.nz, std::size_t(g.nx) * g.ny, 1, g.ny, g.nx};
  }
}

std::size_t plane_base(const Grid& g, int axis, int outer) {
  // axis 0/1: outer indexes k; axis 2: outer indexes j.
  if (axis == 2) return std::size_t(g.nx) * outer;
  return std::size_t(g.nx) * g.ny * outer;
}

void gather(const double* f, double* tile, int n, int bn, std::size_t ls, std::size_t bs, int hw) {
  double* rows = tile + std::size_t(hw) * kSweepBlock;
  if (bs == 1) {
    for (int r = 0; r < n; ++r) {
      const double* src = f + std::size_t(r) * ls;
      double* dst = rows + std::size_t(r) * kSweepBlock;
      for (int b = 0; b < bn; ++b) dst[b] = src[b];
    }
  } else {
    for (int b = 0; b < bn; ++b) {
      const double* src = f + std::size_t(b) * bs;
      double* dst = rows + b;
      for (int r = 0; r < n; ++r) dst[std::size_t(r) * kSweepBlock] = src[std::size_t(r) * ls];
    }
  }
  // periodic halo rows copied from the gathered interior
  for (int m = 1; m <= hw; ++m) {
    std::memcpy(tile + std::size_t(hw - m) * kSweepBlock,
                rows + std::size_t(n - m) * kSweepBlock, sizeof(double) * kSweepBlock);
    std::memcpy(rows + std::size_t(n - 1 + m) * kSweepBlock,
                rows + std::size_t(m - 1) * kSweepBlock, sizeof(double) * kSweepBlock);
  }
}

void scatter(const double* tile, double* out, int n, int bn, std::size_t ls, std::size_t bs) {
  if (bs == 1) {
    for (int r = 0; r < n; ++r) {
      const double* src = tile + std::size_t(r) * kSweepBlock;
      double* dst = out + std::size_t(r) * ls;
      for (int b = 0; b < bn; ++b) dst[b] = src[b];
    }
  } else {
    for (int b = 0; b < bn; ++b) {
      const double* src = tile + b;
      double* dst = out + std::size_t(b) * bs;
      for (int r = 0; r < n; ++r) dst[std::size_t(r) * ls] = src[std::size_t(r) * kSweepBlock];
    }
  }
}

void apply_stencil(const double* in_rows, double* out_rows, int n, int bn, const StencilSpec& s) {
  constexpr int B = kSweepBlock;
  for (int r = 0; r < n; ++r) {
    const double* c = in_rows + std::size_t(r) * B;
    double* o = out_rows + std::size_t(r) * B;
    if (s.antisymmetric) {
      for (int b = 0; b < bn; ++b) o[b] = 0.0;
    } else {
      const double w0 = s.w[0];
      for (int b = 0; b < bn; ++b) o[b] = w0 * c[b];
    }
    for (int m = 1; m <= s.half_width; ++m) {
      const double wm = s.w[m];
      const double* cp = c + std::size_t(m) * B;
      const double* cm = c - std::size_t(m) * B;
      if (s.antisymmetric) {
        for (int b = 0; b < bn; ++b) o[b] += wm * (cp[b] - cm[b]);
      } else {
        for (int b = 0; b < bn; ++b) o[b] += wm * (cp[b] + cm[b]);
      }
    }
  }
}

}  // namespace

void sweep_axis(const Grid& g, int axis, const double* f, double* out, const StencilSpec& sten,
                const CyclicConstSolver* solver) {
  const AxisMap am = axis_map(g, axis);
  const int n = am.n;
  const int hw = sten.half_width;

#pragma omp parallel
  {
    thread_local std::vector<double> tin, tout;
    tin.resize(std::size_t(n + 2 * hw) * kSweepBlock);
    tout.resize(std::size_t(n) * kSweepBlock);

#pragma omp for schedule(static)
    for (int outer = 0; outer < am.outer; ++outer) {
      const std::size_t base = plane_base(g, axis, outer);
      for (int b0 = 0; b0 < am.batch_extent; b0 += kSweepBlock) {
        const int bn = std::min(kSweepBlock, am.batch_extent - b0);
        const std::size_t off = base + std::size_t(b0) * am.batch_stride;
        gather(f + off, tin.data(), n, bn, am.line_stride, am.batch_stride, hw);
        apply_stencil(tin.data() + std::size_t(hw) * kSweepBlock, tout.data(), n, bn, sten);
        if (solver) solver->solve_batch(tout.data(), bn, kSweepBlock);
        scatter(tout.data(), out + off, n, bn, am.line_stride, am.batch_stride);
      }
    }
  }
}

}  // namespace cvples::detail
