#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cvples/grid.hpp"

namespace cvples {

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0) : grid_(g), v_(g.size(), fill) {}

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }

  double& operator()(int i, int j, int k) { return v_[grid_.idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[grid_.idx(i, j, k)]; }

  /// Periodic accessor: indices may be out of range and wrap.
  double at_wrapped(int i, int j, int k) const {
    return v_[grid_.idx(Grid::wrap(i, grid_.nx), Grid::wrap(j, grid_.ny), Grid::wrap(k, grid_.nz))];
  }

  double& operator[](std::size_t m) { return v_[m]; }
  double operator[](std::size_t m) const { return v_[m]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

  void fill(double c) { v_.assign(v_.size(), c); }

 private:
  Grid grid_;
  std::vector<double> v_;
};

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& g)
      : c_{ScalarField(g), ScalarField(g), ScalarField(g)} {}

  const Grid& grid() const { return c_[0].grid(); }

  ScalarField& comp(int c) { return c_[c]; }
  const ScalarField& comp(int c) const { return c_[c]; }

  ScalarField& x() { return c_[0]; }
  ScalarField& y() { return c_[1]; }
  ScalarField& z() { return c_[2]; }
  const ScalarField& x() const { return c_[0]; }
  const ScalarField& y() const { return c_[1]; }
  const ScalarField& z() const { return c_[2]; }

 private:
  std::array<ScalarField, 3> c_;
};

/// Nine-component tensor field; comp(i, j) stores T_ij. For velocity gradients
/// the convention is comp(i, j) = du_i/dx_j.
class TensorField {
 public:
  TensorField() = default;
  explicit TensorField(const Grid& g) {
    for (auto& f : c_) f = ScalarField(g);
  }

  const Grid& grid() const { return c_[0].grid(); }

  ScalarField& comp(int i, int j) { return c_[3 * i + j]; }
  const ScalarField& comp(int i, int j) const { return c_[3 * i + j]; }

 private:
  std::array<ScalarField, 9> c_;
};

}  // namespace cvples
