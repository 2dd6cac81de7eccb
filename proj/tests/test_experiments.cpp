#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "hzlab/errors.hpp"
#include "hzlab/experiments.hpp"

using namespace hzlab;

TEST_CASE("fit_loglog_slope recovers synthetic power laws") {
  std::vector<double> scales, ratios;
  for (int i = 0; i < 9; ++i) {
    const double s = 0.25 * std::pow(2.0, i * 0.5);
    scales.push_back(s);
    ratios.push_back(7.5 * std::pow(s, -1.25));
  }
  double resid = 1.0;
  CHECK(fit_loglog_slope(scales, ratios, &resid) == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(resid <= 1e-12);

  // mixed power law: one-sided fits pick out the two asymptotes
  std::vector<double> wide, mixed;
  for (int i = -4; i <= 4; ++i) {
    const double s = std::pow(2.0, i);
    wide.push_back(s);
    mixed.push_back(std::pow(s, 2.0) + std::pow(s, -1.0));
  }
  CHECK(one_sided_slope(wide, mixed, true, 3) == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(one_sided_slope(wide, mixed, false, 3) == doctest::Approx(2.0).epsilon(0.02));

  CHECK_THROWS_AS(fit_loglog_slope({1.0}, {1.0}), ContractViolation);
  CHECK_THROWS_AS(fit_loglog_slope({1.0, 2.0}, {1.0}), ContractViolation);
  CHECK_THROWS_AS(one_sided_slope(scales, ratios, true, 1), ContractViolation);
}

TEST_CASE("LpPair and constraint arithmetic") {
  const LpPair lp(4.0 / 3.0, 4.0);
  CHECK(lp.gamma() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(LpPair(0.5, 2.0), ContractViolation);

  // alpha=1, beta=0, n=1: gamma=1/2, rho=1/2
  const NecessityVerdict ok = constraint_check(1.0, 0.0, 0.5, 1, 4.0 / 3.0, 4.0);
  CHECK(ok.upper);
  CHECK(ok.lower);
  CHECK(ok.homogeneity);
  CHECK(ok.theta_admissible);
  CHECK(ok.all());

  // theta below rho is inadmissible
  CHECK(!constraint_check(1.0, 0.0, 0.4, 1, 4.0 / 3.0, 4.0).theta_admissible);
  // wrong homogeneity: (alpha+beta)/(n+1) != 1/p - 1/q
  CHECK(!constraint_check(1.0, 0.0, 0.5, 1, 2.0, 4.0).homogeneity);
  // beta + theta < 1/p - 1/q breaks the upper constraint
  CHECK(!constraint_check(1.0, 0.0, 0.3, 1, 4.0 / 3.0, 4.0).upper);
  // beta - theta > 1/p - 1/q breaks the lower constraint
  CHECK(!constraint_check(0.2, 0.8, 0.1, 1, 2.0, 2.0).lower);
}

TEST_CASE("check_interior_support") {
  const PointFn g = gaussian_fn({0.5, 0.5, 0.5});
  CHECK_NOTHROW(
      check_interior_support(sample_field(Box::symmetric({4.0, 4.0, 4.0}), {16, 16, 16}, g)));
  CHECK_THROWS_AS(
      check_interior_support(sample_field(Box::symmetric({1.0, 1.0, 1.0}), {16, 16, 16}, g)),
      SupportError);
}

TEST_CASE("dilation sweeps at coarse resolution match the predicted slopes") {
  std::vector<double> scales;
  for (int i = -2; i <= 2; ++i) scales.push_back(std::pow(2.0, i));

  SUBCASE("frac r-sweep, exact covariance of the quadrature") {
    FracSweepSetup setup;
    setup.kernel = KernelParams::with_rho(1.0, 0.0, 1);
    setup.group = GroupParams(1, 0.0);
    setup.widths = {1.0, 1.0, 1.0};
    setup.res = 12;
    setup.lp = LpPair(4.0 / 3.0, 4.0);
    const SweepReport rep = frac_dilation_sweep(setup, SweepAxis::R, scales);
    // predicted: (alpha+beta) + (n+1)/q - (n+1)/p = 1 + 0.5 - 1.5 = 0
    CHECK(rep.predicted == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(rep.slope - rep.predicted) <= 1e-10);
    CHECK(rep.residual <= 1e-10);
  }
  SUBCASE("frac s-sweep") {
    FracSweepSetup setup;
    setup.kernel = KernelParams::with_rho(1.0, 0.0, 1);
    setup.group = GroupParams(1, 0.0);
    setup.widths = {1.0, 1.0, 1.0};
    setup.res = 12;
    setup.lp = LpPair(2.0, 2.0);
    const SweepReport rep = frac_dilation_sweep(setup, SweepAxis::S, scales);
    // predicted: 1 + 1 - 1 = 1... (alpha+beta) + 2/q - 2/p = 1
    CHECK(rep.predicted == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rep.slope - rep.predicted) <= 1e-10);
  }
  SUBCASE("lambda sweep is an exact identity for mu = 0") {
    FracSweepSetup setup;
    setup.kernel = KernelParams::with_rho(1.0, 0.0, 1);
    setup.group = GroupParams(1, 0.0);
    setup.widths = {1.0, 1.0, 1.0};
    setup.res = 12;
    setup.lp = LpPair(4.0 / 3.0, 4.0);  // homogeneity-matched: gamma = 1/2
    const SweepReport rep = frac_dilation_sweep(setup, SweepAxis::Lambda, scales);
    REQUIRE(rep.ratios.size() == scales.size());
    // theta = rho: Phi is bounded and flat near lambda = 1
    CHECK(std::abs(one_sided_slope(rep.scales, rep.ratios, true)) <= 0.25);
  }
  SUBCASE("riesz r-sweep") {
    const SweepReport rep = riesz_dilation_sweep(RieszParams(0.5, 1), {1.0}, 64, 6.0,
                                                 LpPair(4.0 / 3.0, 4.0), scales);
    // predicted: a + N/q - N/p = 0.5 + 0.25 - 0.75 = 0
    CHECK(rep.predicted == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(rep.slope - rep.predicted) <= 1e-10);
  }
}

TEST_CASE("theta sharpness: boundedness flips exactly at theta = rho") {
  FracSweepSetup setup;
  setup.kernel = KernelParams::with_rho(1.0, 0.0, 1);
  setup.group = GroupParams(1, 0.0);
  setup.widths = {1.0, 1.0, 1.0};
  setup.res = 12;
  setup.lp = LpPair(4.0 / 3.0, 4.0);
  std::vector<double> lambdas;
  for (int i = -8; i <= 8; i += 2) lambdas.push_back(std::pow(2.0, i));
  const auto reports = theta_sharpness(setup, {0.3, 0.5, 0.8}, lambdas);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.rho_value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.band_lo == doctest::Approx(-0.5 - r.theta).epsilon(1e-12));
    CHECK(r.band_hi == doctest::Approx(-0.5 + r.theta).epsilon(1e-12));
  }
  CHECK(!reports[0].bounded);  // theta < rho: Phi blows up as lambda -> 0
  CHECK(reports[1].bounded);   // theta = rho
  CHECK(reports[2].bounded);   // theta > rho

  // the homogeneity constraint is a hard precondition
  FracSweepSetup bad = setup;
  bad.lp = LpPair(2.0, 4.0);
  CHECK_THROWS_AS(theta_sharpness(bad, {0.5}, lambdas), ContractViolation);
}

TEST_CASE("weak-type experiment") {
  const GridField f = sample_field(Box::symmetric({2.0, 2.0, 2.0}), {16, 16, 16},
                                   indicator_fn(Box::symmetric({0.5, 0.5, 0.5})));
  const GroupParams gp(1, 0.0);
  const RectLadder lad(0.125, 2.0, 5);
  const LpPair lp(2.0, 2.0);
  const WeakTypeReport rep = weak_type_experiment(f, 0.0, gp, lp, lad, {0.1, 0.3, 0.6, 0.9});
  REQUIRE(rep.columns.size() == 4);
  CHECK(rep.max_column <= 10.0);
  for (double c : rep.columns) CHECK(c > 0.0);

  // scaling the field cannot change the columns (both sides scale linearly)
  GridField f2 = f;
  for (auto& s : f2.samples) s *= 2.0;
  const WeakTypeReport rep2 = weak_type_experiment(f2, 0.0, gp, lp, lad, {0.2, 0.6, 1.2, 1.8});
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(rep2.columns[i] == doctest::Approx(rep.columns[i]).epsilon(1e-12));

  // lambda at or above sup M f: empty level set, zero column
  const WeakTypeReport above = weak_type_experiment(f, 0.0, gp, lp, lad, {1.0, 5.0});
  CHECK(above.measures[0] == 0.0);
  CHECK(above.columns[0] == 0.0);
  CHECK(above.max_column == 0.0);
}

TEST_CASE("sweep CSV output carries the fitted numbers") {
  std::vector<double> scales = {0.5, 1.0, 2.0};
  SweepReport rep;
  rep.axis = SweepAxis::R;
  rep.scales = scales;
  rep.op_norms = {1.0, 2.0, 4.0};
  rep.f_norms = {1.0, 1.0, 1.0};
  rep.ratios = {1.0, 2.0, 4.0};
  rep.slope = 2.0;
  rep.predicted = 2.0;
  rep.residual = 0.0;
  const std::string path =
      (std::filesystem::temp_directory_path() / "hzlab_sweep.csv").string();
  write_sweep_csv(path, rep, "Eq(2.5) smoke");
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all.find("Eq(2.5)") != std::string::npos);
  CHECK(all.find("slope") != std::string::npos);
  CHECK(all.find("0.5") != std::string::npos);
  std::filesystem::remove(path);
}
