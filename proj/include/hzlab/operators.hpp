#ifndef HZLAB_OPERATORS_HPP
#define HZLAB_OPERATORS_HPP

#include <functional>
#include <vector>

#include "hzlab/grid.hpp"
#include "hzlab/group.hpp"
#include "hzlab/kernels.hpp"

namespace hzlab {

/// Kernel of coordinate differences (length = field dims), with the
/// singular-cell rule already applied.
using DiffKernel = std::function<double(const double*)>;

/// Half the cell diagonal: the shift distance of the singular-cell rule.
double half_cell_diagonal(const GridField& g);

/// Singular-rule kernels bound to a grid's cell geometry.
DiffKernel make_riesz_kernel(const GridField& g, const RieszParams& rp);
DiffKernel make_omega_kernel(const GridField& g, const FSParams& fs);
DiffKernel make_V_kernel(const GridField& g, const KernelParams& k, double bracket_scale = 1.0);
DiffKernel make_separable_kernel(const GridField& g, const KernelParams& k);

/// Core quadrature: out[x] = sum_y f(y_u, y_v, y_t + mu(x_u.y_v - x_v.y_u))
/// * K(x - y) * cellVolume, with f linearly interpolated along t at the
/// twisted argument (zero outside the box). Output grid equals the input
/// grid. mu = 0 (or twist_n <= 0) degenerates to plain correlation.
GridField apply_diff_kernel(const GridField& f, const DiffKernel& kernel, double mu, int twist_n);

/// Same quadrature evaluated at arbitrary points instead of grid centers.
std::vector<double> apply_diff_kernel_at(const GridField& f, const DiffKernel& kernel,
                                         double mu, int twist_n,
                                         const std::vector<std::vector<double>>& points);

/// Euclidean fractional integral T_a on R^N (N = f.dims()).
GridField riesz_apply(const GridField& f, const RieszParams& rp);
std::vector<double> riesz_apply_at(const GridField& f, const RieszParams& rp,
                                   const std::vector<std::vector<double>>& points);

/// Folland-Stein operator S_delta in twisted-convolution form.
GridField folland_stein_apply(const GridField& f, const FSParams& fs, const GroupParams& params);

/// Multi-parameter fractional integral I_{alpha beta}. bracket_scale feeds
/// the lambda-dilated bracket [x/lam + lam/x]^{-theta} used by sharpness
/// sweeps; 1.0 is the plain operator.
GridField frac_integral_apply(const GridField& f, const KernelParams& k,
                              const GroupParams& params, double bracket_scale = 1.0);

/// Separable majorant operator; requires theta = rho(alpha,beta,n) and
/// f >= 0. For mu = 0 it is computed factorized: the inner t-integral first,
/// then the (u,v) sums.
GridField separable_majorant_apply(const GridField& f, const KernelParams& k,
                                   const GroupParams& params);

}  // namespace hzlab

#endif
