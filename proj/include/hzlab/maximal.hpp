#ifndef HZLAB_MAXIMAL_HPP
#define HZLAB_MAXIMAL_HPP

#include <vector>

#include "hzlab/grid.hpp"
#include "hzlab/group.hpp"

namespace hzlab {

/// Per-axis geometric ladder of admissible rectangle half-lengths.
struct RectLadder {
  double base = 0.0;
  double ratio = 2.0;
  int count = 0;

  RectLadder() = default;
  RectLadder(double base_, double ratio_, int count_);

  std::vector<double> values() const;

  /// Ladder spanning [half a cell, the box half-extent] of the given axis.
  static RectLadder spanning(const GridField& f, int axis, double ratio = 2.0);

  /// Every grid-aligned half-length (m + 1/2) * h, m = 0 .. res-1.
  static std::vector<double> exhaustive(const GridField& f, int axis);
};

/// An origin-centered rectangle of the discretized sup: per-axis half-lengths
/// and the volume-power weight it carries.
struct LadderRect {
  std::vector<double> half;
  double weight;
};

/// Corner-lattice cumulative integrals of |f|; box_integral is exact for the
/// piecewise-constant field at arbitrary (clamped) rectangle corners, since
/// the running integral is multilinear inside each cell.
class SummedArea {
 public:
  explicit SummedArea(const GridField& f);

  /// Integral of |f| over [blo, bhi] (per-axis), clamped to the grid box.
  double box_integral(const double* blo, const double* bhi) const;

  /// 1D integral along t for one outer row, between clamped t-bounds.
  double column_integral(std::size_t row, double t_lo, double t_hi) const;

  int dims() const { return d_; }

 private:
  double corner(const int* idx) const;
  int d_;
  std::vector<int> res_;
  std::vector<double> lo_, h_;
  std::vector<std::size_t> stride_;
  std::vector<double> F_;                 // (res+1)^d corner values
  std::vector<double> colsum_;            // rows * (res_t + 1) running t-integrals
  std::size_t n_t_ = 0;
};

/// Weight exponent vol(R)^{gamma-1} rectangles over a per-axis half-length
/// product set.
std::vector<LadderRect> product_rects(const std::vector<std::vector<double>>& per_axis_halves,
                                      double gamma);

/// Constrained (Q1, Q2, Q3) rectangles of the Zygmund maximal operator:
/// Q1, Q2 cube half-lengths a, b from the ladders, t half-length 2ab/?
/// induced by vol(Q3) = vol(Q1)^{1/n} vol(Q2)^{1/n}.
std::vector<LadderRect> zygmund_rects(const std::vector<double>& a_halves,
                                      const std::vector<double>& b_halves,
                                      double alpha, double beta, int n);

enum class MaximalVariant {
  Centered,    // origin-centered R, twisted translate (canonical form)
  Containing,  // sup over R containing the point (anchored discretization)
};

/// max over rects of weight * integral of |f| over the twisted translate of
/// the rectangle, at every grid center.
GridField maximal_over_rects(const GridField& f, const std::vector<LadderRect>& rects,
                             const GroupParams& params,
                             MaximalVariant variant = MaximalVariant::Centered);

/// Same sup at arbitrary points.
std::vector<double> maximal_over_rects_at(const GridField& f, const std::vector<LadderRect>& rects,
                                          const GroupParams& params,
                                          const std::vector<std::vector<double>>& points,
                                          MaximalVariant variant = MaximalVariant::Centered);

/// Strong fractional maximal operator M_gamma over a per-axis ladder.
GridField strong_frac_maximal(const GridField& f, double gamma, const GroupParams& params,
                              const RectLadder& ladder,
                              MaximalVariant variant = MaximalVariant::Centered);

/// Zygmund-constrained fractional maximal operator M_{alpha beta}.
GridField zygmund_maximal(const GridField& f, double alpha, double beta,
                          const GroupParams& params, const RectLadder& ladder);

/// Exhaustive oracle over every grid-aligned half-length combination.
/// Refuses grids above 16 cells per axis; requires the 3-axis (n = 1) layout.
GridField brute_force_maximal(const GridField& f, double gamma, const GroupParams& params);

/// cellVolume * #{cells : g > lambda}.
double level_set_measure(const GridField& g, double lambda);

}  // namespace hzlab

#endif
