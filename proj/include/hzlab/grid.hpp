#ifndef HZLAB_GRID_HPP
#define HZLAB_GRID_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hzlab/errors.hpp"

namespace hzlab {

/// Axis-aligned box in R^d. For Heisenberg fields the axis order is
/// u_0..u_{n-1}, v_0..v_{n-1}, t.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lo_, std::vector<double> hi_);

  /// Origin-symmetric box with the given per-axis half widths.
  static Box symmetric(const std::vector<double>& half);

  int dims() const { return static_cast<int>(lo.size()); }
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const;

  /// Box scaled by the three-parameter dilation (r, s, r*s*lam); requires the
  /// 2n+1 axis layout.
  Box dilated(double r, double s, double lam, int n) const;
};

/// Pointwise function of grid coordinates (pointer to dims() doubles).
using PointFn = std::function<double(const double*)>;

/// Cell-centered samples of a real function on a uniform grid over a Box.
struct GridField {
  Box box;
  std::vector<int> res;
  std::vector<double> samples;

  int dims() const { return box.dims(); }
  std::size_t size() const { return samples.size(); }

  double cell_size(int axis) const { return box.extent(axis) / res[axis]; }
  double cell_volume() const;

  /// Center coordinate of cell index i along one axis.
  double center_coord(int axis, int i) const {
    return box.lo[axis] + (i + 0.5) * cell_size(axis);
  }

  /// Decode a flat index (row-major, last axis fastest) into the cell center.
  void cell_center(std::size_t flat, double* out) const;

  std::size_t flat_index(const std::vector<int>& idx) const;
};

/// Sample f at every cell center. Throws SamplingError naming the offending
/// cell if any value is non-finite.
GridField sample_field(const Box& box, const std::vector<int>& res, const PointFn& f);

/// Discrete L^p norm by midpoint quadrature: (sum |s_i|^p cellVol)^{1/p}.
double lp_norm(const GridField& g, double p);

/// Function-level dilation: returns x -> f(x_u/r, x_v/s, x_t/(r*s*lam))
/// on the 2n+1 axis layout.
PointFn dilate_fn(PointFn f, double r, double s, double lam, int n);

/// Tensor Gaussian exp(-sum (x_i/w_i)^2).
PointFn gaussian_fn(std::vector<double> widths);

/// Indicator of a box.
PointFn indicator_fn(Box support);

/// CSV import/export: '#'-prefixed header records box, resolution, n, mu;
/// data rows are (coordinates..., value).
void write_field_csv(const std::string& path, const GridField& g, int n, double mu);
GridField read_field_csv(const std::string& path, int* n_out = nullptr, double* mu_out = nullptr);

}  // namespace hzlab

#endif
