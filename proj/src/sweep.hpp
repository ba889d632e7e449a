#pragma once

// Internal batched line-sweep engine shared by the compact derivatives and the
// discrete filters. Lines along an axis are gathered in blocks into a halo'd
// scratch tile [n + 2*hw][B], the stencil and the optional implicit solve are
// vectorized across the block, and the result is scattered back.

#include <cstddef>
#include <vector>

#include "cvples/compact.hpp"
#include "cvples/grid.hpp"

namespace cvples::detail {

struct StencilSpec {
  // Symmetric:      out_r = w[0] f_r + sum_m w[m] (f_{r+m} + f_{r-m})
  // Antisymmetric:  out_r =           sum_m w[m] (f_{r+m} - f_{r-m})
  double w[5] = {0, 0, 0, 0, 0};
  int half_width = 0;
  bool antisymmetric = false;
};

inline constexpr int kSweepBlock = 16;

// f and out may alias only when they are the same pointer.
void sweep_axis(const Grid& g, int axis, const double* f, double* out, const StencilSpec& sten,
                const CyclicConstSolver* solver);

}  // namespace cvples::detail
