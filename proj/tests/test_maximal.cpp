#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "hzlab/errors.hpp"
#include "hzlab/grid.hpp"
#include "hzlab/maximal.hpp"

using namespace hzlab;

namespace {

GridField random_field(std::mt19937_64& rng, const Box& box, int res, bool nonneg = false) {
  std::uniform_real_distribution<double> d(nonneg ? 0.0 : -1.0, 1.0);
  GridField f;
  f.box = box;
  f.res.assign(box.dims(), res);
  std::size_t total = 1;
  for (int r : f.res) total *= r;
  f.samples.resize(total);
  for (auto& s : f.samples) s = d(rng);
  return f;
}

// Exact integral of |f| over an axis box by direct cell-overlap summation.
double direct_box_integral(const GridField& f, const double* blo, const double* bhi) {
  const int d = f.dims();
  double total = 0.0;
  std::vector<int> cur(d, 0);
  while (true) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const double h = f.cell_size(a);
      const double clo = f.box.lo[a] + cur[a] * h;
      w *= std::max(0.0, std::min(bhi[a], clo + h) - std::max(blo[a], clo));
    }
    if (w > 0.0) {
      std::size_t flat = 0;
      for (int a = 0; a < d; ++a) flat = flat * f.res[a] + cur[a];
      total += w * std::abs(f.samples[flat]);
    }
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++cur[a] < f.res[a]) break;
      cur[a] = 0;
    }
    if (a < 0) break;
  }
  return total;
}

double max_rel_diff(const GridField& a, const GridField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a.samples[i]), std::abs(b.samples[i]), 1e-300});
    worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("rect ladders") {
  const RectLadder lad(0.25, 2.0, 4);
  const auto v = lad.values();
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 0.25);
  CHECK(v[3] == 2.0);

  GridField g;
  g.box = Box::symmetric({2.0, 2.0, 2.0});
  g.res = {16, 16, 16};
  g.samples.assign(4096, 0.0);
  const auto span = RectLadder::spanning(g, 0).values();
  CHECK(span.front() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(span.back() >= 2.0 * (1 - 1e-12));

  const auto ex = RectLadder::exhaustive(g, 2);
  REQUIRE(ex.size() == 16);
  CHECK(ex[0] == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(ex[15] == doctest::Approx(0.25 * 15.5).epsilon(1e-14));

  CHECK_THROWS_AS(RectLadder(-1.0, 2.0, 3), ContractViolation);
  CHECK_THROWS_AS(RectLadder(1.0, 0.5, 3), ContractViolation);
}

TEST_CASE("summed-area box integrals are exact") {
  std::mt19937_64 rng(71);
  const GridField f = random_field(rng, Box({-1.0, 0.0, 2.0}, {1.0, 3.0, 4.0}), 6);
  const SummedArea sat(f);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  for (int it = 0; it < 200; ++it) {
    double blo[3], bhi[3];
    for (int a = 0; a < 3; ++a) {
      const double c = f.box.lo[a] + f.box.extent(a) * (0.5 + d(rng));
      const double half = f.box.extent(a) * (0.05 + 0.5 * std::abs(d(rng)));
      blo[a] = c - half;
      bhi[a] = c + half;
    }
    const double want = direct_box_integral(f, blo, bhi);
    CHECK(sat.box_integral(blo, bhi) == doctest::Approx(want).epsilon(1e-12));
  }
  // full box = L1 mass
  double blo[3] = {-10, -10, -10}, bhi[3] = {10, 10, 10};
  CHECK(sat.box_integral(blo, bhi) == doctest::Approx(lp_norm(f, 1.0)).epsilon(1e-12));
}

TEST_CASE("analytic values of M_0 on the cube indicator") {
  const Box box = Box::symmetric({2.0, 2.0, 2.0});
  const GridField f = sample_field(box, {16, 16, 16},
                                   indicator_fn(Box::symmetric({0.5, 0.5, 0.5})));
  const GroupParams gp(1, 0.0);

  SUBCASE("exact at the two reference points with aligned half-lengths") {
    // x = (1,0,0): the 1D overlap (a - 1/2)/(2a) peaks at a = 3/2 with value 1/3
    std::vector<std::vector<double>> per_axis(3, std::vector<double>{0.5, 1.5});
    const auto rects = product_rects(per_axis, 0.0);
    const auto vals = maximal_over_rects_at(f, rects, gp, {{0, 0, 0}, {1, 0, 0}});
    CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("within 5% under a ratio-2^{1/8} ladder") {
    const RectLadder lad(0.125, std::pow(2.0, 0.125), 33);  // 0.125 .. 2.0
    std::vector<std::vector<double>> per_axis(3, lad.values());
    const auto rects = product_rects(per_axis, 0.0);
    const auto vals = maximal_over_rects_at(f, rects, gp, {{0, 0, 0}, {1, 0, 0}});
    CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(vals[1] - 1.0 / 3.0) <= 0.05 / 3.0);
    CHECK(vals[1] <= 1.0 / 3.0 + 1e-12);  // ladder only underestimates the sup
  }
}

TEST_CASE("superlevel set of M_0 matches the analytic profile") {
  // continuum profile: the per-axis factor is 1 inside the slab |x_i| <= 1/2
  // and 1/(2|x_i| + 1) outside (optimum a_i = |x_i| + 1/2), with a jump to
  // <= 1/2 across the face. Two off-axis factors already give <= 1/4 < 1/3,
  // so {M_0 chi > 1/3} is the cube plus six slabs 1/2 < |x_i| < 1: volume 4.
  const double analytic = 4.0;
  const Box box = Box::symmetric({2.0, 2.0, 2.0});
  const GridField f = sample_field(box, {16, 16, 16},
                                   indicator_fn(Box::symmetric({0.5, 0.5, 0.5})));
  const RectLadder lad(0.125, std::pow(2.0, 0.25), 17);  // 0.125 .. 2.0
  const GridField m = strong_frac_maximal(f, 0.0, GroupParams(1, 0.0), lad);
  const double measured = level_set_measure(m, 1.0 / 3.0);
  CHECK(std::abs(measured - analytic) <= 0.10 * analytic);
}

TEST_CASE("fast maximal equals the brute-force oracle on exhaustive ladders") {
  std::mt19937_64 rng(77);

  SUBCASE("mu = 0, 8^3 and 12^3") {
    for (int res : {8, 12}) {
      const GridField f = random_field(rng, Box::symmetric({1.0, 1.0, 1.0}), res);
      std::vector<std::vector<double>> per_axis;
      for (int a = 0; a < 3; ++a) per_axis.push_back(RectLadder::exhaustive(f, a));
      for (double gamma : {0.0, 0.3}) {
        const GridField fast =
            maximal_over_rects(f, product_rects(per_axis, gamma), GroupParams(1, 0.0));
        const GridField brute = brute_force_maximal(f, gamma, GroupParams(1, 0.0));
        CHECK(max_rel_diff(fast, brute) <= 1e-12);
      }
    }
  }
  SUBCASE("mu = 1, sheared path, 8^3") {
    const GridField f = random_field(rng, Box::symmetric({1.0, 1.0, 1.0}), 8);
    std::vector<std::vector<double>> per_axis;
    for (int a = 0; a < 3; ++a) per_axis.push_back(RectLadder::exhaustive(f, a));
    const GridField fast =
        maximal_over_rects(f, product_rects(per_axis, 0.0), GroupParams(1, 1.0));
    const GridField brute = brute_force_maximal(f, 0.0, GroupParams(1, 1.0));
    CHECK(max_rel_diff(fast, brute) <= 1e-12);
  }
}

TEST_CASE("sublinearity, homogeneity, monotonicity") {
  std::mt19937_64 rng(83);
  const Box box = Box::symmetric({1.0, 1.0, 1.0});
  const GridField f = random_field(rng, box, 8);
  const GridField g = random_field(rng, box, 8);
  GridField fg = f, f3 = f, absf = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fg.samples[i] += g.samples[i];
    f3.samples[i] *= -3.0;
    absf.samples[i] = std::abs(f.samples[i]) + 0.1;
  }
  const GroupParams gp(1, 1.0);
  const RectLadder lad(0.125, 2.0, 4);
  const GridField Mf = strong_frac_maximal(f, 0.25, gp, lad);
  const GridField Mg = strong_frac_maximal(g, 0.25, gp, lad);
  const GridField Mfg = strong_frac_maximal(fg, 0.25, gp, lad);
  const GridField Mf3 = strong_frac_maximal(f3, 0.25, gp, lad);
  const GridField Mabs = strong_frac_maximal(absf, 0.25, gp, lad);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(Mfg.samples[i] <= Mf.samples[i] + Mg.samples[i] + 1e-12);
    CHECK(Mf3.samples[i] == doctest::Approx(3.0 * Mf.samples[i]).epsilon(1e-12));
    CHECK(Mf.samples[i] <= Mabs.samples[i] + 1e-12);
    CHECK(Mf.samples[i] >= 0.0);
  }
}

TEST_CASE("zygmund maximal is dominated by the strong maximal") {
  // at gamma = (alpha + beta)/(n + 1) each constrained rectangle carries
  // exactly the strong weight vol(R)^{gamma-1}, so domination holds whenever
  // the strong family contains the constrained one; the t-axis of the strong
  // family is therefore extended by the induced half-lengths 2ab
  std::mt19937_64 rng(89);
  const Box box = Box::symmetric({1.0, 1.0, 1.0});
  const double pairs[3][2] = {{1.0, 0.0}, {0.5, 0.25}, {0.3, 0.9}};
  const RectLadder lad(0.0625, 2.0, 5);
  const auto halves = lad.values();
  std::vector<double> t_halves = halves;
  for (double a : halves)
    for (double b : halves) t_halves.push_back(2.0 * a * b);
  std::sort(t_halves.begin(), t_halves.end());
  t_halves.erase(std::unique(t_halves.begin(), t_halves.end()), t_halves.end());
  for (const auto& ab : pairs) {
    const double gamma = (ab[0] + ab[1]) / 2.0;  // n = 1
    REQUIRE(gamma < 1.0);
    for (double mu : {0.0, 1.0}) {
      const GridField f = random_field(rng, box, 16, true);
      const GroupParams gp(1, mu);
      const GridField z = zygmund_maximal(f, ab[0], ab[1], gp, lad);
      const GridField s =
          maximal_over_rects(f, product_rects({halves, halves, t_halves}, gamma), gp);
      for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(z.samples[i] <= s.samples[i] * (1 + 1e-12));
    }
  }
}

TEST_CASE("containing variant dominates the centered one") {
  std::mt19937_64 rng(97);
  const GridField f = random_field(rng, Box::symmetric({1.0, 1.0, 1.0}), 8, true);
  const GroupParams gp(1, 0.0);
  const RectLadder lad(0.125, 2.0, 4);
  const GridField c = strong_frac_maximal(f, 0.0, gp, lad, MaximalVariant::Centered);
  const GridField a = strong_frac_maximal(f, 0.0, gp, lad, MaximalVariant::Containing);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(a.samples[i] >= c.samples[i] * (1 - 1e-12));
}

TEST_CASE("brute force refuses large grids, citing its cost") {
  std::mt19937_64 rng(101);
  const GridField f = random_field(rng, Box::symmetric({1.0, 1.0, 1.0}), 20);
  try {
    brute_force_maximal(f, 0.0, GroupParams(1, 0.0));
    FAIL("expected RefusalError");
  } catch (const RefusalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("refus") != std::string::npos);
    CHECK(msg.find("cost") != std::string::npos);
  }
}

TEST_CASE("level_set_measure") {
  GridField g;
  g.box = Box::symmetric({1.0, 1.0, 1.0});
  g.res = {4, 4, 4};
  g.samples.assign(64, 2.0);
  CHECK(level_set_measure(g, 1.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(level_set_measure(g, 2.0) == 0.0);  // strict inequality
  g.samples[0] = 5.0;
  CHECK(level_set_measure(g, 4.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(level_set_measure(g, 0.0), ContractViolation);
}
