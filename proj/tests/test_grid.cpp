#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "hzlab/errors.hpp"
#include "hzlab/grid.hpp"
#include "hzlab/kernels.hpp"

using namespace hzlab;

TEST_CASE("sampling basics") {
  const Box box = Box::symmetric({1.0, 1.0, 1.0});
  const GridField c = sample_field(box, {4, 4, 4}, [](const double*) { return 1.0; });
  for (double s : c.samples) CHECK(s == 1.0);

  // left-half indicator on even resolution: exactly half the samples
  const GridField h =
      sample_field(box, {4, 4, 4}, [](const double* x) { return x[0] < 0.0 ? 1.0 : 0.0; });
  std::size_t ones = 0;
  for (double s : h.samples) ones += s == 1.0;
  CHECK(ones == h.size() / 2);

  // cell centers avoid singular planes on symmetric boxes with even res
  const KernelParams k = KernelParams::with_rho(1.0, 0.0, 1);
  CHECK_NOTHROW(sample_field(box, {8, 8, 8}, [&](const double* x) {
    return eval_V(GroupPoint(x[0], x[1], x[2]), k);
  }));

  CHECK_THROWS_AS(sample_field(box, {2, 2, 2},
                               [](const double* x) { return 1.0 / (x[0] - x[0]); }),
                  SamplingError);
  CHECK_THROWS_AS(Box({0.0}, {0.0}), ContractViolation);
}

TEST_CASE("lp_norm closed forms") {
  const Box cube = Box::symmetric({0.5, 0.5, 0.5});
  const GridField chi = sample_field(cube, {6, 6, 6}, [](const double*) { return 1.0; });
  for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(lp_norm(chi, p) == doctest::Approx(1.0).epsilon(1e-13));

  // c * indicator of a volume-8 box, p = 2 -> c * sqrt(8)
  const GridField big =
      sample_field(Box::symmetric({1.0, 1.0, 1.0}), {4, 4, 4}, [](const double*) { return 3.0; });
  CHECK(lp_norm(big, 2.0) == doctest::Approx(3.0 * std::sqrt(8.0)).epsilon(1e-13));

  const GridField gauss = sample_field(Box::symmetric({6.0, 6.0, 6.0}), {96, 96, 96},
                                       gaussian_fn({1.0, 1.0, 1.0}));
  CHECK(lp_norm(gauss, 2.0) == doctest::Approx(std::pow(M_PI / 2.0, 0.75)).epsilon(1e-3));
}

TEST_CASE("lp_norm properties") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GridField g;
  g.box = Box::symmetric({1.0, 1.0, 1.0});
  g.res = {6, 6, 6};
  g.samples.resize(216);
  for (auto& s : g.samples) s = d(rng);
  GridField g3 = g;
  for (auto& s : g3.samples) s *= -3.0;
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(lp_norm(g3, p) == doctest::Approx(3.0 * lp_norm(g, p)).epsilon(1e-13));
  }
  // power-mean monotonicity of lp_norm(g,p) / vol^{1/p}
  const double vol = g.box.volume();
  double prev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0}) {
    const double cur = lp_norm(g, p) / std::pow(vol, 1.0 / p);
    CHECK(cur >= prev * (1 - 1e-12));
    prev = cur;
  }
}

TEST_CASE("dilate_fn and the Eq-style scaling of norms") {
  // indicator, r=2: L1 norm 8 -> 32
  const PointFn chi = indicator_fn(Box::symmetric({1.0, 1.0, 1.0}));
  const GridField base = sample_field(Box::symmetric({1.0, 1.0, 1.0}), {8, 8, 8}, chi);
  CHECK(lp_norm(base, 1.0) == doctest::Approx(8.0).epsilon(1e-13));
  const GridField dil = sample_field(Box::symmetric({2.0, 1.0, 2.0}), {8, 8, 8},
                                     dilate_fn(chi, 2.0, 1.0, 1.0, 1));
  CHECK(lp_norm(dil, 1.0) == doctest::Approx(32.0).epsilon(1e-13));

  // Gaussian, r=2, s=3, lam=0.5, p=2: ratio 2 * 3 * sqrt(0.5)
  const PointFn g = gaussian_fn({1.0, 1.0, 1.0});
  const GridField g0 = sample_field(Box::symmetric({5.0, 5.0, 5.0}), {64, 64, 64}, g);
  const GridField g1 = sample_field(Box::symmetric({10.0, 15.0, 15.0}), {64, 64, 64},
                                    dilate_fn(g, 2.0, 3.0, 0.5, 1));
  CHECK(lp_norm(g1, 2.0) / lp_norm(g0, 2.0) ==
        doctest::Approx(2.0 * 3.0 * std::sqrt(0.5)).epsilon(1e-2));

  // identity dilation
  const GridField gid = sample_field(Box::symmetric({5.0, 5.0, 5.0}), {64, 64, 64},
                                     dilate_fn(g, 1.0, 1.0, 1.0, 1));
  for (std::size_t i = 0; i < gid.size(); ++i) CHECK(gid.samples[i] == g0.samples[i]);

  CHECK_THROWS_AS(dilate_fn(g, 0.0, 1.0, 1.0, 1), ContractViolation);
}

TEST_CASE("field CSV round trip") {
  const GridField g = sample_field(Box::symmetric({1.0, 2.0, 0.5}), {4, 6, 8},
                                   gaussian_fn({1.0, 2.0, 1.0}));
  const std::string path = (std::filesystem::temp_directory_path() / "hzlab_field.csv").string();
  write_field_csv(path, g, 1, 0.25);
  int n = 0;
  double mu = 0.0;
  const GridField r = read_field_csv(path, &n, &mu);
  CHECK(n == 1);
  CHECK(mu == 0.25);
  REQUIRE(r.res == g.res);
  for (int a = 0; a < 3; ++a) {
    CHECK(r.box.lo[a] == g.box.lo[a]);
    CHECK(r.box.hi[a] == g.box.hi[a]);
  }
  REQUIRE(r.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.samples[i] == g.samples[i]);
  std::filesystem::remove(path);
}

TEST_CASE("index round trip") {
  GridField g;
  g.box = Box({-1.0, 0.0, 2.0}, {1.0, 3.0, 4.0});
  g.res = {3, 4, 5};
  g.samples.assign(60, 0.0);
  double x[3];
  std::size_t flat = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 5; ++k, ++flat) {
        CHECK(g.flat_index({i, j, k}) == flat);
        g.cell_center(flat, x);
        CHECK(x[0] == doctest::Approx(g.center_coord(0, i)).epsilon(1e-15));
        CHECK(x[1] == doctest::Approx(g.center_coord(1, j)).epsilon(1e-15));
        CHECK(x[2] == doctest::Approx(g.center_coord(2, k)).epsilon(1e-15));
      }
}
