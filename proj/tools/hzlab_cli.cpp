// Batch experiment front end: each subcommand reads one config section,
// writes CSV into the output directory, and exits nonzero if any assertion
// in the run fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hzlab/config.hpp"
#include "hzlab/covering.hpp"
#include "hzlab/errors.hpp"
#include "hzlab/experiments.hpp"
#include "hzlab/grid.hpp"
#include "hzlab/group.hpp"
#include "hzlab/kernels.hpp"
#include "hzlab/maximal.hpp"
#include "hzlab/operators.hpp"
#include "hzlab/parallel.hpp"

namespace {

using namespace hzlab;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct RunContext {
  Config cfg;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  std::ofstream open_csv(const std::string& name) const {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/" + name);
    require(out.good(), "cannot open output file " + out_dir + "/" + name);
    return out;
  }
};

GroupPoint random_point(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> u(n), v(n);
  for (int i = 0; i < n; ++i) u[i] = dist(rng);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return GroupPoint(std::move(u), std::move(v), dist(rng));
}

double coord_residual(const GroupPoint& a, const GroupPoint& b) {
  double r = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    r = std::max(r, std::abs(a.u[i] - b.u[i]));
    r = std::max(r, std::abs(a.v[i] - b.v[i]));
  }
  return std::max(r, std::abs(a.t - b.t));
}

// ---------------------------------------------------------------------------

void run_group_check(RunContext& ctx) {
  const long triples = ctx.cfg.get_int("group-check", "triples");
  const double tol = ctx.cfg.get_num("group-check", "tolerance");
  auto out = ctx.open_csv("group_check.csv");
  out << "# Eq(1.3) group law: associativity, identity, inverse residuals\n";
  out << "n,mu,max_assoc,max_identity,max_inverse\n";
  for (int n : {1, 2, 3}) {
    for (double mu : {-2.0, 0.0, 1.0}) {
      const GroupParams gp(n, mu);
      auto rng = sub_rng(ctx.seed, "group-check/" + std::to_string(n) + "/" + fmt(mu));
      double worst_assoc = 0.0, worst_id = 0.0, worst_inv = 0.0;
      for (long k = 0; k < triples; ++k) {
        const GroupPoint a = random_point(rng, n, -10.0, 10.0);
        const GroupPoint b = random_point(rng, n, -10.0, 10.0);
        const GroupPoint c = random_point(rng, n, -10.0, 10.0);
        worst_assoc = std::max(
            worst_assoc,
            coord_residual(multiply(multiply(a, b, gp), c, gp), multiply(a, multiply(b, c, gp), gp)));
        worst_id = std::max(worst_id, coord_residual(multiply(a, identity_point(n), gp), a));
        worst_inv =
            std::max(worst_inv, coord_residual(multiply(a, inverse(a), gp), identity_point(n)));
      }
      out << n << ',' << fmt(mu) << ',' << fmt(worst_assoc) << ',' << fmt(worst_id) << ','
          << fmt(worst_inv) << "\n";
      ctx.check(worst_assoc <= tol && worst_id <= tol && worst_inv <= tol,
                "group-check: residual above " + fmt(tol) + " at n=" + std::to_string(n) +
                    " mu=" + fmt(mu));
    }
  }
}

void run_kernel_check(RunContext& ctx) {
  const long points = ctx.cfg.get_int("kernel-check", "points");
  const long dilations = ctx.cfg.get_int("kernel-check", "dilations");
  const double tol = ctx.cfg.get_num("kernel-check", "tolerance");
  const int n = static_cast<int>(ctx.cfg.get_int("kernel-check", "n"));
  const auto alphas = ctx.cfg.get_list("kernel-check", "alpha_list");
  const auto betas = ctx.cfg.get_list("kernel-check", "beta_list");
  require(alphas.size() == betas.size(), "kernel-check: alpha_list/beta_list length mismatch");
  auto out = ctx.open_csv("kernel_check.csv");
  out << "# Eq(1.8) Zygmund homogeneity and Eq(3.5) separable majorant bound, theta = rho\n";
  out << "alpha,beta,max_homogeneity_residual,separable_violations\n";
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const KernelParams k = KernelParams::with_rho(alphas[j], betas[j], n);
    auto rng = sub_rng(ctx.seed, "kernel-check/" + std::to_string(j));
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    double worst = 0.0;
    long violations = 0;
    for (long i = 0; i < points; ++i) {
      GroupPoint x = random_point(rng, n, -5.0, 5.0);
      if (std::abs(x.t) < 1e-6) x.t = 1e-6;  // keep clear of the singular planes
      const double base = eval_V(x, k);
      for (long d = 0; d < dilations; ++d) {
        const double r = scale(rng), s = scale(rng);
        const double lhs = eval_V(zygmund_dilate(x, r, s), k);
        const double rhs = std::pow(r * s, k.alpha + k.beta - n - 1.0) * base;
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
      if (!check_separable_bound(x, k)) ++violations;
    }
    out << fmt(alphas[j]) << ',' << fmt(betas[j]) << ',' << fmt(worst) << ',' << violations
        << "\n";
    ctx.check(worst <= tol, "kernel-check: homogeneity residual above tolerance at pair " +
                                std::to_string(j));
    ctx.check(violations == 0,
              "kernel-check: separable bound violated at pair " + std::to_string(j));
  }
}

GridField load_or_build_field(RunContext& ctx, const std::string& section, int* n_out,
                              double* mu_out) {
  const std::string kind = ctx.cfg.get_str(section, "field");
  if (kind == "unit-cube" || kind == "gaussian") {
    const int n = static_cast<int>(ctx.cfg.get_int(section, "n"));
    const double mu = ctx.cfg.get_num(section, "mu");
    const int res = static_cast<int>(ctx.cfg.get_int(section, "res"));
    const double half = ctx.cfg.get_num(section, "box_half");
    const int d = 2 * n + 1;
    const Box box = Box::symmetric(std::vector<double>(d, half));
    if (n_out) *n_out = n;
    if (mu_out) *mu_out = mu;
    if (kind == "unit-cube")
      return sample_field(box, std::vector<int>(d, res),
                          indicator_fn(Box::symmetric(std::vector<double>(d, 0.5))));
    const double w = ctx.cfg.get_num(section, "width");
    return sample_field(box, std::vector<int>(d, res), gaussian_fn(std::vector<double>(d, w)));
  }
  return read_field_csv(kind, n_out, mu_out);
}

void run_apply(RunContext& ctx) {
  int n = 1;
  double mu = 0.0;
  const GridField f = load_or_build_field(ctx, "apply", &n, &mu);
  const std::string op = ctx.cfg.get_str("apply", "operator");
  GridField g;
  std::string note;
  if (op == "riesz") {
    const RieszParams rp(ctx.cfg.get_num("apply", "a"), f.dims());
    g = riesz_apply(f, rp);
    note = "Eq(1.1) Riesz fractional integral T_a";
  } else if (op == "folland-stein") {
    const FSParams fs(ctx.cfg.get_num("apply", "delta"), n);
    g = folland_stein_apply(f, fs, GroupParams(n, mu));
    note = "Eq(1.5) Folland-Stein operator S_delta";
  } else if (op == "frac-integral") {
    const KernelParams k(ctx.cfg.get_num("apply", "alpha"), ctx.cfg.get_num("apply", "beta"),
                         ctx.cfg.get_num("apply", "theta"), n);
    g = frac_integral_apply(f, k, GroupParams(n, mu));
    note = "Eq(1.7) multi-parameter fractional integral I_{alpha beta}";
  } else if (op == "separable-majorant") {
    const KernelParams k = KernelParams::with_rho(ctx.cfg.get_num("apply", "alpha"),
                                                  ctx.cfg.get_num("apply", "beta"), n);
    g = separable_majorant_apply(f, k, GroupParams(n, mu));
    note = "Eq(3.5) separable majorant operator";
  } else {
    throw ContractViolation("apply: unknown operator " + op);
  }
  std::filesystem::create_directories(ctx.out_dir);
  {
    auto out = ctx.open_csv("apply_meta.csv");
    out << "# " << note << "\n";
    out << "output_l2," << fmt(lp_norm(g, 2.0)) << "\n";
  }
  write_field_csv(ctx.out_dir + "/apply_out.csv", g, n, mu);
  for (double s : g.samples) ctx.check(std::isfinite(s), "apply: non-finite output sample");
}

void run_maximal(RunContext& ctx) {
  int n = 1;
  double mu = 0.0;
  const GridField f = load_or_build_field(ctx, "maximal", &n, &mu);
  const GroupParams gp(n, mu);
  const std::string mode = ctx.cfg.get_str("maximal", "mode");
  if (mode == "strong" || mode == "zygmund") {
    const RectLadder ladder(ctx.cfg.get_num("maximal", "ladder_base"),
                            ctx.cfg.get_num("maximal", "ladder_ratio"),
                            static_cast<int>(ctx.cfg.get_int("maximal", "ladder_count")));
    GridField m;
    std::string note;
    if (mode == "strong") {
      m = strong_frac_maximal(f, ctx.cfg.get_num("maximal", "gamma"), gp, ladder);
      note = "Eq(1.10) strong fractional maximal operator M_gamma";
    } else {
      m = zygmund_maximal(f, ctx.cfg.get_num("maximal", "alpha"),
                          ctx.cfg.get_num("maximal", "beta"), gp, ladder);
      note = "Eq(1.12) Zygmund-constrained maximal operator M_{alpha beta}";
    }
    std::filesystem::create_directories(ctx.out_dir);
    {
      auto out = ctx.open_csv("maximal_meta.csv");
      out << "# " << note << "\n";
      out << "sup," << fmt(*std::max_element(m.samples.begin(), m.samples.end())) << "\n";
    }
    write_field_csv(ctx.out_dir + "/maximal_out.csv", m, n, mu);
  } else if (mode == "compare") {
    const double gamma = ctx.cfg.get_num("maximal", "gamma");
    const double tol = ctx.cfg.get_num("maximal", "tolerance");
    std::vector<std::vector<double>> halves;
    for (int a = 0; a < f.dims(); ++a) halves.push_back(RectLadder::exhaustive(f, a));
    const GridField fast = maximal_over_rects(f, product_rects(halves, gamma), gp);
    const GridField oracle = brute_force_maximal(f, gamma, gp);
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      const double denom = std::max(std::abs(oracle.samples[i]), 1e-300);
      worst = std::max(worst, std::abs(fast.samples[i] - oracle.samples[i]) / denom);
    }
    auto out = ctx.open_csv("maximal_compare.csv");
    out << "# Eq(1.10) ladder implementation vs exhaustive oracle\n";
    out << "max_relative_difference," << fmt(worst) << "\n";
    ctx.check(worst <= tol, "maximal compare: relative difference " + fmt(worst) + " above " +
                                fmt(tol));
  } else {
    throw ContractViolation("maximal: unknown mode " + mode);
  }
}

RectFamily random_family(std::mt19937_64& rng, int d, int max_rects) {
  std::uniform_int_distribution<int> count(1, max_rects);
  std::uniform_real_distribution<double> cdist(-5.0, 5.0);
  std::uniform_real_distribution<double> hdist(0.05, 2.0);
  RectFamily fam;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<double> c(d), h(d);
    for (int a = 0; a < d; ++a) c[a] = cdist(rng);
    for (int a = 0; a < d; ++a) h[a] = hdist(rng);
    fam.rects.emplace_back(std::move(c), std::move(h));
  }
  return fam;
}

void run_cover(RunContext& ctx) {
  const std::string source = ctx.cfg.get_str("cover", "family");
  if (source == "random") {
    const int families = static_cast<int>(ctx.cfg.get_int("cover", "families"));
    const int max_rects = static_cast<int>(ctx.cfg.get_int("cover", "max_rects"));
    const int d = static_cast<int>(ctx.cfg.get_int("cover", "dims"));
    const double bound = ctx.cfg.get_num("cover", "ratio_bound");
    auto out = ctx.open_csv("cover_random.csv");
    out << "# Eq(4.1c) Eq(4.2c) covering-lemma conclusions over random families, "
           "selection rule Eq(4.4)\n";
    out << "family,rects,selected,comparability,lp1.5_ratio,lp2_ratio,lp3_ratio\n";
    double worst = 0.0;
    for (int fidx = 0; fidx < families; ++fidx) {
      auto rng = sub_rng(ctx.seed, "cover/" + std::to_string(fidx));
      const RectFamily fam = random_family(rng, d, max_rects);
      const CoverReport rep = select_cover(fam);
      out << fidx << ',' << fam.rects.size() << ',' << rep.selected.size() << ','
          << fmt(rep.comparability);
      for (double r : rep.indicator_ratios) out << ',' << fmt(r);
      out << "\n";
      worst = std::max(worst, rep.comparability);
      for (double r : rep.indicator_ratios) worst = std::max(worst, r);
    }
    ctx.check(worst <= bound,
              "cover: ratio " + fmt(worst) + " above regression bound " + fmt(bound));
  } else {
    const RectFamily fam = read_family_csv(source);
    const CoverReport rep = select_cover(fam);
    std::filesystem::create_directories(ctx.out_dir);
    write_cover_report_csv(ctx.out_dir + "/cover_report.csv", rep,
                           "Eq(4.1c) Eq(4.2c) covering report, selection rule Eq(4.4)");
  }
}

void run_sweep(RunContext& ctx) {
  std::filesystem::create_directories(ctx.out_dir);
  const std::string kind = ctx.cfg.get_str("sweep", "kind");
  const LpPair lp(ctx.cfg.get_num("sweep", "p"), ctx.cfg.get_num("sweep", "q"));
  const auto scales = ctx.cfg.get_list("sweep", "scales");
  if (kind == "riesz") {
    const int N = static_cast<int>(ctx.cfg.get_int("sweep", "dims"));
    const RieszParams rp(ctx.cfg.get_num("sweep", "a"), N);
    const SweepReport rep = riesz_dilation_sweep(
        rp, std::vector<double>(N, ctx.cfg.get_num("sweep", "width")),
        static_cast<int>(ctx.cfg.get_int("sweep", "res")), ctx.cfg.get_num("sweep", "box_sigmas"),
        lp, scales);
    write_sweep_csv(ctx.out_dir + "/sweep_riesz.csv", rep,
                    "Eq(1.2) Riesz dilation sweep, HLS homogeneity");
    const double tol = ctx.cfg.get_num("sweep", "slope_tolerance");
    ctx.check(std::abs(rep.slope - rep.predicted) <= tol,
              "sweep riesz: slope " + fmt(rep.slope) + " vs predicted " + fmt(rep.predicted));
    return;
  }
  FracSweepSetup setup;
  setup.group = GroupParams(static_cast<int>(ctx.cfg.get_int("sweep", "n")),
                            ctx.cfg.get_num("sweep", "mu"));
  setup.kernel = KernelParams(ctx.cfg.get_num("sweep", "alpha"), ctx.cfg.get_num("sweep", "beta"),
                              ctx.cfg.get_num("sweep", "theta"), setup.group.n);
  setup.widths.assign(2 * setup.group.n + 1, ctx.cfg.get_num("sweep", "width"));
  setup.res = static_cast<int>(ctx.cfg.get_int("sweep", "res"));
  setup.box_sigmas = ctx.cfg.get_num("sweep", "box_sigmas");
  setup.lp = lp;
  if (kind == "theta") {
    const auto thetas = ctx.cfg.get_list("sweep", "theta_list");
    const double tol = ctx.cfg.get_num("sweep", "slope_tolerance");
    const auto reports = theta_sharpness(setup, thetas, scales, tol);
    auto out = ctx.open_csv("sweep_theta.csv");
    out << "# Eq(2.6) Eq(2.9) theta-sharpness lambda sweeps, admissible band "
           "[beta-theta-gamma, beta+theta-gamma]\n";
    out << "theta,rho,slope_low,slope_high,band_lo,band_hi,in_band,bounded\n";
    for (const auto& r : reports)
      out << fmt(r.theta) << ',' << fmt(r.rho_value) << ',' << fmt(r.slope_low) << ','
          << fmt(r.slope_high) << ',' << fmt(r.band_lo) << ',' << fmt(r.band_hi) << ','
          << (r.in_band ? 1 : 0) << ',' << (r.bounded ? 1 : 0) << "\n";
    return;
  }
  SweepAxis axis;
  if (kind == "frac-r")
    axis = SweepAxis::R;
  else if (kind == "frac-s")
    axis = SweepAxis::S;
  else if (kind == "frac-lambda")
    axis = SweepAxis::Lambda;
  else
    throw ContractViolation("sweep: unknown kind " + kind);
  const SweepReport rep = frac_dilation_sweep(setup, axis, scales);
  write_sweep_csv(ctx.out_dir + "/sweep_" + kind + ".csv", rep,
                  "Eq(2.4) Eq(2.5) dilation sweep of the norm ratio Phi");
  if (axis != SweepAxis::Lambda) {
    const double tol = ctx.cfg.get_num("sweep", "slope_tolerance");
    ctx.check(std::abs(rep.slope - rep.predicted) <= tol,
              "sweep " + kind + ": slope " + fmt(rep.slope) + " vs predicted " +
                  fmt(rep.predicted));
  }
}

void run_weak_type(RunContext& ctx) {
  int n = 1;
  double mu = 0.0;
  const GridField f = load_or_build_field(ctx, "weak-type", &n, &mu);
  const LpPair lp(ctx.cfg.get_num("weak-type", "p"), ctx.cfg.get_num("weak-type", "q"));
  const RectLadder ladder(ctx.cfg.get_num("weak-type", "ladder_base"),
                          ctx.cfg.get_num("weak-type", "ladder_ratio"),
                          static_cast<int>(ctx.cfg.get_int("weak-type", "ladder_count")));
  const auto lambdas = ctx.cfg.get_list("weak-type", "lambda_list");
  const WeakTypeReport rep =
      weak_type_experiment(f, lp.gamma(), GroupParams(n, mu), lp, ladder, lambdas);
  auto out = ctx.open_csv("weak_type.csv");
  out << "# Eq(4.17) weak-type column lambda * measure^{1/q} / ||f||_p for M_gamma\n";
  out << "lambda,level_set_measure,column\n";
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
    out << fmt(rep.lambdas[i]) << ',' << fmt(rep.measures[i]) << ',' << fmt(rep.columns[i])
        << "\n";
  out << "max_column," << fmt(rep.max_column) << ",\n";
  if (ctx.cfg.has("weak-type", "bound"))
    ctx.check(rep.max_column <= ctx.cfg.get_num("weak-type", "bound"),
              "weak-type: column " + fmt(rep.max_column) + " above bound");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-group fractional-integration laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir = "out";
  long long seed_flag = -1;
  int threads = 0;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_flag, "override the global RNG seed");
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

  const std::vector<std::pair<std::string, void (*)(RunContext&)>> commands = {
      {"group-check", run_group_check}, {"kernel-check", run_kernel_check},
      {"apply", run_apply},             {"maximal", run_maximal},
      {"cover", run_cover},             {"sweep", run_sweep},
      {"weak-type", run_weak_type},
  };
  for (const auto& [name, fn] : commands) {
    (void)fn;
    app.add_subcommand(name);
  }

  CLI11_PARSE(app, argc, argv);

  RunContext ctx;
  try {
    ctx.cfg = Config::parse_file(config_path);
    ctx.out_dir = out_dir;
    ctx.seed = seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag)
                              : static_cast<std::uint64_t>(ctx.cfg.get_int("global", "seed", 1));
    set_thread_count(threads);
    for (const auto& [name, fn] : commands)
      if (app.get_subcommand(name)->parsed()) fn(ctx);
  } catch (const std::exception& e) {
    std::cout << "error," << e.what() << "\n";
    return 2;
  }
  if (!ctx.failures.empty()) {
    for (const std::string& f : ctx.failures) std::cout << "fail," << f << "\n";
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}
