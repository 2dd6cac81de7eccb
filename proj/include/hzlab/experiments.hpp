#ifndef HZLAB_EXPERIMENTS_HPP
#define HZLAB_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "hzlab/grid.hpp"
#include "hzlab/group.hpp"
#include "hzlab/kernels.hpp"
#include "hzlab/maximal.hpp"

namespace hzlab {

struct LpPair {
  double p = 2.0;
  double q = 2.0;

  LpPair() = default;
  LpPair(double p_, double q_);
  double gamma() const { return 1.0 / p - 1.0 / q; }
};

enum class SweepAxis { R, S, Lambda };

struct SweepReport {
  SweepAxis axis = SweepAxis::R;
  std::vector<double> scales;
  std::vector<double> op_norms;   // ||Op f_scale||_q
  std::vector<double> f_norms;    // ||f_scale||_p
  std::vector<double> ratios;     // Phi(scale)
  double slope = 0.0;
  double predicted = 0.0;
  double residual = 0.0;          // max log deviation from the fit
};

/// Least-squares slope of log(ratio) against log(scale); the optional
/// residual output receives the max absolute deviation in log units.
double fit_loglog_slope(const std::vector<double>& scales, const std::vector<double>& ratios,
                        double* residual = nullptr);

/// Slope fitted on the `npts` smallest (low_end) or largest scales.
double one_sided_slope(const std::vector<double>& scales, const std::vector<double>& ratios,
                       bool low_end, int npts = 3);

/// Throws SupportError when the outermost cell layer carries more than a
/// 1e-6 relative share of the field's sup.
void check_interior_support(const GridField& f);

struct FracSweepSetup {
  KernelParams kernel{1.0, 0.0, 0.0, 1};
  GroupParams group{1, 0.0};
  std::vector<double> widths;    // Gaussian widths, one per axis
  int res = 24;
  double box_sigmas = 6.0;       // box half-extent = box_sigmas * width / sqrt(2)
  LpPair lp;
};

/// Phi(scale) sweep for I_{alpha beta}. The r and s axes use per-scale
/// dilated grids (fixed resolution, dilated box); the lambda axis uses the
/// equivalent scaled-bracket operator on the base grid with the analytic
/// prefactor lambda^{beta + 1/q - 1/p}.
SweepReport frac_dilation_sweep(const FracSweepSetup& setup, SweepAxis axis,
                                const std::vector<double>& scales);

/// Phi(r) sweep for the Euclidean Riesz operator; predicted slope
/// a + N/q - N/p.
SweepReport riesz_dilation_sweep(const RieszParams& rp, const std::vector<double>& widths,
                                 int res, double box_sigmas, const LpPair& lp,
                                 const std::vector<double>& scales);

struct ThetaSweepReport {
  double theta = 0.0;
  double rho_value = 0.0;
  SweepReport sweep;              // the lambda sweep
  double slope_low = 0.0;         // fitted toward lambda -> 0
  double slope_high = 0.0;        // fitted toward lambda -> infinity
  double band_lo = 0.0;           // beta - theta - (1/p - 1/q)
  double band_hi = 0.0;           // beta + theta - (1/p - 1/q)
  bool in_band = false;           // both one-sided slopes inside [band_lo, band_hi] +- tol
  bool bounded = false;           // slope_low >= -tol and slope_high <= +tol
};

/// Lambda sweeps across bracket exponents; requires the homogeneity
/// constraint (alpha+beta)/(n+1) = 1/p - 1/q so lambda isolates theta.
std::vector<ThetaSweepReport> theta_sharpness(const FracSweepSetup& setup,
                                              const std::vector<double>& thetas,
                                              const std::vector<double>& lambdas,
                                              double tol = 0.05);

struct WeakTypeReport {
  std::vector<double> lambdas;
  std::vector<double> measures;   // level-set measures of M_gamma f
  std::vector<double> columns;    // lambda * measure^{1/q} / ||f||_p
  double max_column = 0.0;
};

WeakTypeReport weak_type_experiment(const GridField& f, double gamma, const GroupParams& params,
                                    const LpPair& lp, const RectLadder& ladder,
                                    const std::vector<double>& lambdas);

struct NecessityVerdict {
  bool upper = false;        // beta + theta >= 1/p - 1/q
  bool lower = false;        // beta - theta <= 1/p - 1/q
  bool homogeneity = false;  // (alpha + beta)/(n+1) = 1/p - 1/q
  bool theta_admissible = false;  // theta >= |alpha - n beta|/(n+1)
  bool all() const { return upper && lower && homogeneity && theta_admissible; }
};

NecessityVerdict constraint_check(double alpha, double beta, double theta, int n, double p,
                                  double q, double tol = 1e-9);

void write_sweep_csv(const std::string& path, const SweepReport& report,
                     const std::string& header_note);

}  // namespace hzlab

#endif
