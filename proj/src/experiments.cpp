#include "hzlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hzlab/errors.hpp"
#include "hzlab/operators.hpp"

namespace hzlab {

LpPair::LpPair(double p_, double q_) : p(p_), q(q_) {
  require(p >= 1.0 && q >= 1.0, "LpPair: need p, q >= 1");
}

double fit_loglog_slope(const std::vector<double>& scales, const std::vector<double>& ratios,
                        double* residual) {
  require(scales.size() == ratios.size() && scales.size() >= 3,
          "fit_loglog_slope: need >= 3 matched points");
  const std::size_t m = scales.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    require(scales[i] > 0.0 && ratios[i] > 0.0, "fit_loglog_slope: values must be positive");
    const double x = std::log(scales[i]), y = std::log(ratios[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  require(denom > 0.0, "fit_loglog_slope: degenerate scale set");
  const double slope = (m * sxy - sx * sy) / denom;
  if (residual) {
    const double icpt = (sy - slope * sx) / m;
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      worst = std::max(worst,
                       std::abs(std::log(ratios[i]) - slope * std::log(scales[i]) - icpt));
    *residual = worst;
  }
  return slope;
}

double one_sided_slope(const std::vector<double>& scales, const std::vector<double>& ratios,
                       bool low_end, int npts) {
  require(scales.size() == ratios.size(), "one_sided_slope: size mismatch");
  require(npts >= 2 && static_cast<std::size_t>(npts) <= scales.size(),
          "one_sided_slope: bad point count");
  std::vector<std::size_t> order(scales.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scales[a] < scales[b]; });
  std::vector<double> xs, ys;
  for (int k = 0; k < npts; ++k) {
    const std::size_t i = low_end ? order[k] : order[order.size() - 1 - k];
    xs.push_back(scales[i]);
    ys.push_back(ratios[i]);
  }
  if (npts == 2)
    return std::log(ys[1] / ys[0]) / std::log(xs[1] / xs[0]);
  return fit_loglog_slope(xs, ys);
}

void check_interior_support(const GridField& f) {
  double sup = 0.0;
  for (double s : f.samples) sup = std::max(sup, std::abs(s));
  if (sup == 0.0) return;
  const int d = f.dims();
  std::vector<int> idx(d, 0);
  double edge = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    bool boundary = false;
    for (int a = 0; a < d; ++a)
      if (idx[a] == 0 || idx[a] == f.res[a] - 1) boundary = true;
    if (boundary) edge = std::max(edge, std::abs(f.samples[c]));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < f.res[a]) break;
      idx[a] = 0;
    }
  }
  if (edge > 1e-6 * sup) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", edge / sup);
    throw SupportError(std::string("check_interior_support: boundary cells carry relative mass ") +
                       buf);
  }
}

namespace {

Box gaussian_box(const std::vector<double>& widths, double sigmas) {
  std::vector<double> half(widths.size());
  for (std::size_t a = 0; a < widths.size(); ++a)
    half[a] = sigmas * widths[a] / std::sqrt(2.0);
  return Box::symmetric(half);
}

}  // namespace

SweepReport frac_dilation_sweep(const FracSweepSetup& setup, SweepAxis axis,
                                const std::vector<double>& scales) {
  const int n = setup.group.n;
  require(setup.widths.size() == static_cast<std::size_t>(2 * n + 1),
          "frac_dilation_sweep: need one width per axis");
  require(scales.size() >= 3, "frac_dilation_sweep: need >= 3 scales");
  SweepReport report;
  report.axis = axis;
  report.scales = scales;

  const std::vector<int> res(2 * n + 1, setup.res);
  const Box base_box = gaussian_box(setup.widths, setup.box_sigmas);
  const PointFn base = gaussian_fn(setup.widths);
  const LpPair& lp = setup.lp;

  if (axis == SweepAxis::Lambda) {
    // fixed grid; lambda enters through the scaled bracket plus the exact
    // prefactor lambda^{beta + 1/q - 1/p}
    const GridField f = sample_field(base_box, res, base);
    check_interior_support(f);
    const double fp = lp_norm(f, lp.p);
    for (double lam : scales) {
      require(lam > 0.0, "frac_dilation_sweep: scales must be positive");
      const GridField g = frac_integral_apply(f, setup.kernel, setup.group, lam);
      const double gq = lp_norm(g, lp.q);
      report.op_norms.push_back(gq);
      report.f_norms.push_back(fp);
      report.ratios.push_back(std::pow(lam, setup.kernel.beta + 1.0 / lp.q - 1.0 / lp.p) * gq /
                              fp);
    }
    report.predicted = setup.kernel.beta + 1.0 / lp.q - 1.0 / lp.p;  // bracket-neutral part
  } else {
    for (double sc : scales) {
      require(sc > 0.0, "frac_dilation_sweep: scales must be positive");
      const double r = axis == SweepAxis::R ? sc : 1.0;
      const double s = axis == SweepAxis::S ? sc : 1.0;
      const GridField f =
          sample_field(base_box.dilated(r, s, 1.0, n), res, dilate_fn(base, r, s, 1.0, n));
      check_interior_support(f);
      const GridField g = frac_integral_apply(f, setup.kernel, setup.group);
      const double fp = lp_norm(f, lp.p);
      const double gq = lp_norm(g, lp.q);
      report.op_norms.push_back(gq);
      report.f_norms.push_back(fp);
      report.ratios.push_back(gq / fp);
    }
    report.predicted = setup.kernel.alpha + setup.kernel.beta + (n + 1.0) / lp.q -
                       (n + 1.0) / lp.p;
  }
  report.slope = fit_loglog_slope(report.scales, report.ratios, &report.residual);
  return report;
}

SweepReport riesz_dilation_sweep(const RieszParams& rp, const std::vector<double>& widths,
                                 int res, double box_sigmas, const LpPair& lp,
                                 const std::vector<double>& scales) {
  require(widths.size() == static_cast<std::size_t>(rp.N),
          "riesz_dilation_sweep: need one width per axis");
  require(scales.size() >= 3, "riesz_dilation_sweep: need >= 3 scales");
  SweepReport report;
  report.axis = SweepAxis::R;
  report.scales = scales;
  const std::vector<int> resv(rp.N, res);
  const PointFn base = gaussian_fn(widths);
  const Box base_box = gaussian_box(widths, box_sigmas);
  for (double r : scales) {
    require(r > 0.0, "riesz_dilation_sweep: scales must be positive");
    Box box = base_box;
    std::vector<double> w = widths;
    for (int a = 0; a < rp.N; ++a) {
      box.lo[a] *= r;
      box.hi[a] *= r;
      w[a] *= r;
    }
    const GridField f = sample_field(box, resv, gaussian_fn(w));
    check_interior_support(f);
    const GridField g = riesz_apply(f, rp);
    const double fp = lp_norm(f, lp.p);
    const double gq = lp_norm(g, lp.q);
    report.op_norms.push_back(gq);
    report.f_norms.push_back(fp);
    report.ratios.push_back(gq / fp);
  }
  report.predicted = rp.a + rp.N / lp.q - rp.N / lp.p;
  report.slope = fit_loglog_slope(report.scales, report.ratios, &report.residual);
  return report;
}

std::vector<ThetaSweepReport> theta_sharpness(const FracSweepSetup& setup,
                                              const std::vector<double>& thetas,
                                              const std::vector<double>& lambdas,
                                              double tol) {
  const double gamma = (setup.kernel.alpha + setup.kernel.beta) / (setup.group.n + 1.0);
  require(std::abs(gamma - setup.lp.gamma()) <= 1e-12,
          "theta_sharpness: need (alpha+beta)/(n+1) = 1/p - 1/q");
  require(lambdas.size() >= 5, "theta_sharpness: need >= 5 lambda values");
  std::vector<ThetaSweepReport> out;
  const double rho_v = rho(setup.kernel.alpha, setup.kernel.beta, setup.group.n);
  for (double th : thetas) {
    FracSweepSetup local = setup;
    local.kernel.theta = th;
    ThetaSweepReport rep;
    rep.theta = th;
    rep.rho_value = rho_v;
    rep.sweep = frac_dilation_sweep(local, SweepAxis::Lambda, lambdas);
    rep.slope_low = one_sided_slope(lambdas, rep.sweep.ratios, true);
    rep.slope_high = one_sided_slope(lambdas, rep.sweep.ratios, false);
    rep.band_lo = setup.kernel.beta - th - setup.lp.gamma();
    rep.band_hi = setup.kernel.beta + th - setup.lp.gamma();
    rep.in_band = rep.slope_low >= rep.band_lo - tol && rep.slope_low <= rep.band_hi + tol &&
                  rep.slope_high >= rep.band_lo - tol && rep.slope_high <= rep.band_hi + tol;
    rep.bounded = rep.slope_low >= -tol && rep.slope_high <= tol;
    out.push_back(std::move(rep));
  }
  return out;
}

WeakTypeReport weak_type_experiment(const GridField& f, double gamma, const GroupParams& params,
                                    const LpPair& lp, const RectLadder& ladder,
                                    const std::vector<double>& lambdas) {
  require(std::abs(gamma - lp.gamma()) <= 1e-12,
          "weak_type_experiment: need gamma = 1/p - 1/q");
  const GridField m = strong_frac_maximal(f, gamma, params, ladder);
  const double fp = lp_norm(f, lp.p);
  require(fp > 0.0, "weak_type_experiment: ||f||_p must be positive");
  WeakTypeReport report;
  report.lambdas = lambdas;
  for (double lam : lambdas) {
    const double meas = level_set_measure(m, lam);
    const double col = lam * std::pow(meas, 1.0 / lp.q) / fp;
    report.measures.push_back(meas);
    report.columns.push_back(col);
    report.max_column = std::max(report.max_column, col);
  }
  return report;
}

NecessityVerdict constraint_check(double alpha, double beta, double theta, int n, double p,
                                  double q, double tol) {
  require(n >= 1, "constraint_check: n must be >= 1");
  require(p >= 1.0 && q >= 1.0, "constraint_check: need p, q >= 1");
  const double gamma = 1.0 / p - 1.0 / q;
  NecessityVerdict v;
  v.upper = beta + theta >= gamma - tol;
  v.lower = beta - theta <= gamma + tol;
  v.homogeneity = std::abs((alpha + beta) / (n + 1.0) - gamma) <= tol;
  v.theta_admissible = theta >= rho(alpha, beta, n) - tol;
  return v;
}

void write_sweep_csv(const std::string& path, const SweepReport& report,
                     const std::string& header_note) {
  std::ofstream out(path);
  require(out.good(), "write_sweep_csv: cannot open " + path);
  char buf[32];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  const char* axis_name = report.axis == SweepAxis::R   ? "r"
                          : report.axis == SweepAxis::S ? "s"
                                                        : "lambda";
  out << "# " << header_note << "\n";
  out << "# axis=" << axis_name << " slope=" << fmt(report.slope)
      << " predicted=" << fmt(report.predicted) << " residual=" << fmt(report.residual) << "\n";
  out << "scale,op_norm_q,f_norm_p,phi,log_phi\n";
  for (std::size_t i = 0; i < report.scales.size(); ++i)
    out << fmt(report.scales[i]) << ',' << fmt(report.op_norms[i]) << ','
        << fmt(report.f_norms[i]) << ',' << fmt(report.ratios[i]) << ','
        << fmt(std::log(report.ratios[i])) << "\n";
}

}  // namespace hzlab
