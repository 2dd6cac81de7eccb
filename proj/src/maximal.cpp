#include "hzlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hzlab/errors.hpp"
#include "hzlab/parallel.hpp"

namespace hzlab {

RectLadder::RectLadder(double base_, double ratio_, int count_)
    : base(base_), ratio(ratio_), count(count_) {
  require(base > 0.0, "RectLadder: base must be positive");
  require(ratio > 1.0, "RectLadder: ratio must exceed 1");
  require(count >= 1, "RectLadder: count must be >= 1");
}

std::vector<double> RectLadder::values() const {
  std::vector<double> v(count);
  double x = base;
  for (int i = 0; i < count; ++i) {
    v[i] = x;
    x *= ratio;
  }
  return v;
}

RectLadder RectLadder::spanning(const GridField& f, int axis, double ratio) {
  const double base = 0.5 * f.cell_size(axis);
  const double top = 0.5 * f.box.extent(axis);
  int count = 1;
  double x = base;
  while (x * ratio <= top * (1.0 + 1e-12)) {
    x *= ratio;
    ++count;
  }
  return RectLadder(base, ratio, count);
}

std::vector<double> RectLadder::exhaustive(const GridField& f, int axis) {
  const double h = f.cell_size(axis);
  std::vector<double> v(f.res[axis]);
  for (int m = 0; m < f.res[axis]; ++m) v[m] = (m + 0.5) * h;
  return v;
}

// ---------------------------------------------------------------------------
// SummedArea

SummedArea::SummedArea(const GridField& f) {
  d_ = f.dims();
  res_ = f.res;
  lo_ = f.box.lo;
  h_.resize(d_);
  for (int a = 0; a < d_; ++a) h_[a] = f.cell_size(a);

  stride_.assign(d_, 1);
  std::size_t total = 1;
  for (int a = d_ - 1; a >= 0; --a) {
    stride_[a] = total;
    total *= static_cast<std::size_t>(res_[a] + 1);
  }
  F_.assign(total, 0.0);

  // Scatter |f| * cellVol to corner (i+1, ...), then prefix-sum per axis.
  const double cv = f.cell_volume();
  std::vector<int> idx(d_, 0);
  for (std::size_t c = 0; c < f.size(); ++c) {
    std::size_t pos = 0;
    for (int a = 0; a < d_; ++a) pos += static_cast<std::size_t>(idx[a] + 1) * stride_[a];
    F_[pos] = std::abs(f.samples[c]) * cv;
    for (int a = d_ - 1; a >= 0; --a) {
      if (++idx[a] < res_[a]) break;
      idx[a] = 0;
    }
  }
  for (int a = 0; a < d_; ++a) {
    const std::size_t n_a = static_cast<std::size_t>(res_[a] + 1);
    const std::size_t inner = stride_[a];
    const std::size_t lines = total / n_a;
    for (std::size_t o = 0; o < lines; ++o) {
      // o enumerates the corner lattice with axis a removed
      const std::size_t base = (o / inner) * inner * n_a + (o % inner);
      for (std::size_t i = 1; i < n_a; ++i)
        F_[base + i * stride_[a]] += F_[base + (i - 1) * stride_[a]];
    }
  }

  // Running t-integrals per outer row, for the sheared (mu != 0) path.
  n_t_ = static_cast<std::size_t>(res_[d_ - 1]);
  const std::size_t rows = f.size() / n_t_;
  colsum_.assign(rows * (n_t_ + 1), 0.0);
  const double h_t = h_[d_ - 1];
  double cell_area = 1.0;
  for (int a = 0; a < d_ - 1; ++a) cell_area *= h_[a];
  (void)cell_area;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = f.samples.data() + r * n_t_;
    double* cs = colsum_.data() + r * (n_t_ + 1);
    cs[0] = 0.0;
    for (std::size_t j = 0; j < n_t_; ++j) cs[j + 1] = cs[j] + std::abs(row[j]) * h_t;
  }
}

double SummedArea::corner(const int* idx) const {
  std::size_t pos = 0;
  for (int a = 0; a < d_; ++a) pos += static_cast<std::size_t>(idx[a]) * stride_[a];
  return F_[pos];
}

double SummedArea::box_integral(const double* blo, const double* bhi) const {
  // Per-axis clamped lattice coordinates for both bounds.
  int i0[8], i1[8];
  double w0[8], w1[8];
  for (int a = 0; a < d_; ++a) {
    for (int side = 0; side < 2; ++side) {
      const double x = side == 0 ? blo[a] : bhi[a];
      double s = (x - lo_[a]) / h_[a];
      s = std::clamp(s, 0.0, static_cast<double>(res_[a]));
      int i = static_cast<int>(std::floor(s));
      if (i > res_[a] - 1) i = res_[a] - 1;
      const double w = s - i;
      if (side == 0) { i0[a] = i; w0[a] = w; } else { i1[a] = i; w1[a] = w; }
    }
  }
  double total = 0.0;
  const int ncorners = 1 << d_;
  int idx[8];
  for (int c = 0; c < ncorners; ++c) {
    int sign = 1;
    for (int a = 0; a < d_; ++a)
      if (!((c >> a) & 1)) sign = -sign;
    // multilinear interpolation of F at this corner
    double val = 0.0;
    for (int m = 0; m < ncorners; ++m) {
      double wt = 1.0;
      for (int a = 0; a < d_; ++a) {
        const bool hi_side = (c >> a) & 1;
        const int base = hi_side ? i1[a] : i0[a];
        const double w = hi_side ? w1[a] : w0[a];
        const bool up = (m >> a) & 1;
        wt *= up ? w : (1.0 - w);
        idx[a] = base + (up ? 1 : 0);
        if (wt == 0.0) break;
      }
      if (wt != 0.0) val += wt * corner(idx);
    }
    total += sign * val;
  }
  return total;
}

double SummedArea::column_integral(std::size_t row, double t_lo, double t_hi) const {
  const double* cs = colsum_.data() + row * (n_t_ + 1);
  auto eval = [&](double t) {
    double s = (t - lo_[d_ - 1]) / h_[d_ - 1];
    s = std::clamp(s, 0.0, static_cast<double>(n_t_));
    std::size_t i = static_cast<std::size_t>(s);
    if (i > n_t_ - 1) i = n_t_ - 1;
    const double w = s - i;
    return cs[i] + w * (cs[i + 1] - cs[i]);
  };
  return eval(t_hi) - eval(t_lo);
}

// ---------------------------------------------------------------------------
// Rect sets

std::vector<LadderRect> product_rects(const std::vector<std::vector<double>>& per_axis_halves,
                                      double gamma) {
  const int d = static_cast<int>(per_axis_halves.size());
  std::vector<LadderRect> rects;
  std::vector<std::size_t> cur(d, 0);
  while (true) {
    LadderRect r;
    r.half.resize(d);
    double vol = 1.0;
    for (int a = 0; a < d; ++a) {
      r.half[a] = per_axis_halves[a][cur[a]];
      vol *= 2.0 * r.half[a];
    }
    r.weight = std::pow(vol, gamma - 1.0);
    rects.push_back(std::move(r));
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++cur[a] < per_axis_halves[a].size()) break;
      cur[a] = 0;
    }
    if (a < 0) break;
  }
  return rects;
}

std::vector<LadderRect> zygmund_rects(const std::vector<double>& a_halves,
                                      const std::vector<double>& b_halves,
                                      double alpha, double beta, int n) {
  std::vector<LadderRect> rects;
  for (double a : a_halves) {
    for (double b : b_halves) {
      const double vol1 = std::pow(2.0 * a, n);
      const double vol2 = std::pow(2.0 * b, n);
      const double vol3 = 2.0 * a * 2.0 * b;  // vol1^{1/n} vol2^{1/n}
      LadderRect r;
      r.half.assign(2 * n + 1, 0.0);
      for (int i = 0; i < n; ++i) r.half[i] = a;
      for (int i = 0; i < n; ++i) r.half[n + i] = b;
      r.half[2 * n] = vol3 / 2.0;
      r.weight = std::pow(vol1, alpha / n - 1.0) * std::pow(vol2, alpha / n - 1.0) *
                 std::pow(vol3, beta - 1.0);
      rects.push_back(std::move(r));
    }
  }
  return rects;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

/// Integral of |f|(xi, eta, tau + mu(xu.eta - xv.xi)) over the rectangle of
/// the given half-lengths centered at `center`, for the evaluation point
/// `xpt` (which feeds the twist). Exact for mu = 0; for mu != 0 the t-shift
/// is taken at column centers (sheared row sums).
double rect_integral(const GridField& f, const SummedArea& sat, const double* xpt,
                     const double* center, const std::vector<double>& half, double mu, int n) {
  const int d = f.dims();
  if (mu == 0.0) {
    double blo[8], bhi[8];
    for (int a = 0; a < d; ++a) {
      blo[a] = center[a] - half[a];
      bhi[a] = center[a] + half[a];
    }
    return sat.box_integral(blo, bhi);
  }
  // sheared path: iterate (u, v) columns overlapping the window
  const int od = d - 1;
  int i_lo[8], i_hi[8], cur[8];
  for (int a = 0; a < od; ++a) {
    const double h = f.cell_size(a);
    const double wlo = center[a] - half[a], whi = center[a] + half[a];
    i_lo[a] = std::max(0, static_cast<int>(std::floor((wlo - f.box.lo[a]) / h)));
    i_hi[a] = std::min(f.res[a] - 1, static_cast<int>(std::floor((whi - f.box.lo[a]) / h)));
    if (i_lo[a] > i_hi[a]) return 0.0;
    cur[a] = i_lo[a];
  }
  double total = 0.0;
  while (true) {
    double wprod = 1.0;
    double col_center[8];
    std::size_t row = 0;
    for (int a = 0; a < od; ++a) {
      const double h = f.cell_size(a);
      const double clo = f.box.lo[a] + cur[a] * h;
      const double ov = std::min(center[a] + half[a], clo + h) - std::max(center[a] - half[a], clo);
      wprod *= std::max(0.0, ov);
      col_center[a] = clo + 0.5 * h;
      row = row * f.res[a] + cur[a];
    }
    if (wprod > 0.0) {
      double shift = 0.0;
      for (int i = 0; i < n; ++i)
        shift += xpt[i] * col_center[n + i] - xpt[n + i] * col_center[i];
      const double tc = center[od] + mu * shift;
      total += wprod * sat.column_integral(row, tc - half[od], tc + half[od]);
    }
    int a = od - 1;
    for (; a >= 0; --a) {
      if (++cur[a] <= i_hi[a]) break;
      cur[a] = i_lo[a];
    }
    if (a < 0) break;
  }
  return total;
}

double maximal_at_point(const GridField& f, const SummedArea& sat,
                        const std::vector<LadderRect>& rects, const GroupParams& gp,
                        const double* x, MaximalVariant variant) {
  const int d = f.dims();
  double best = 0.0;
  double center[8];
  for (const LadderRect& r : rects) {
    if (variant == MaximalVariant::Centered) {
      const double val = r.weight * rect_integral(f, sat, x, x, r.half, gp.mu, gp.n);
      best = std::max(best, val);
    } else {
      // anchored discretization of sup over rectangles containing x
      const int combos = 1;
      (void)combos;
      int anchor[8];
      for (int a = 0; a < d; ++a) anchor[a] = 0;
      while (true) {
        for (int a = 0; a < d; ++a) center[a] = x[a] + (anchor[a] - 1) * r.half[a];
        const double val = r.weight * rect_integral(f, sat, x, center, r.half, gp.mu, gp.n);
        best = std::max(best, val);
        int a = d - 1;
        for (; a >= 0; --a) {
          if (++anchor[a] < 3) break;
          anchor[a] = 0;
        }
        if (a < 0) break;
      }
    }
  }
  return best;
}

}  // namespace

GridField maximal_over_rects(const GridField& f, const std::vector<LadderRect>& rects,
                             const GroupParams& params, MaximalVariant variant) {
  require(f.dims() == 2 * params.n + 1, "maximal_over_rects: field is not a 2n+1 layout");
  require(f.dims() <= 8, "maximal_over_rects: too many axes");
  for (const LadderRect& r : rects)
    for (double h : r.half) require(h > 0.0, "maximal_over_rects: half-lengths must be positive");
  const SummedArea sat(f);
  GridField out;
  out.box = f.box;
  out.res = f.res;
  out.samples.assign(f.size(), 0.0);
  parallel_for(f.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> x(f.dims());
    for (std::size_t i = b; i < e; ++i) {
      f.cell_center(i, x.data());
      out.samples[i] = maximal_at_point(f, sat, rects, params, x.data(), variant);
    }
  });
  return out;
}

std::vector<double> maximal_over_rects_at(const GridField& f, const std::vector<LadderRect>& rects,
                                          const GroupParams& params,
                                          const std::vector<std::vector<double>>& points,
                                          MaximalVariant variant) {
  require(f.dims() == 2 * params.n + 1, "maximal_over_rects_at: field is not a 2n+1 layout");
  const SummedArea sat(f);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == static_cast<std::size_t>(f.dims()),
            "maximal_over_rects_at: point dimension mismatch");
    out[i] = maximal_at_point(f, sat, rects, params, points[i].data(), variant);
  }
  return out;
}

GridField strong_frac_maximal(const GridField& f, double gamma, const GroupParams& params,
                              const RectLadder& ladder, MaximalVariant variant) {
  require(gamma >= 0.0 && gamma < 1.0, "strong_frac_maximal: need 0 <= gamma < 1");
  std::vector<std::vector<double>> per_axis(f.dims(), ladder.values());
  return maximal_over_rects(f, product_rects(per_axis, gamma), params, variant);
}

GridField zygmund_maximal(const GridField& f, double alpha, double beta,
                          const GroupParams& params, const RectLadder& ladder) {
  const auto halves = ladder.values();
  return maximal_over_rects(f, zygmund_rects(halves, halves, alpha, beta, params.n), params);
}

GridField brute_force_maximal(const GridField& f, double gamma, const GroupParams& params) {
  require(f.dims() == 3 && params.n == 1, "brute_force_maximal: only the n = 1 layout");
  require(gamma >= 0.0 && gamma < 1.0, "brute_force_maximal: need 0 <= gamma < 1");
  const int Ru = f.res[0], Rv = f.res[1], Rt = f.res[2];
  if (Ru > 16 || Rv > 16 || Rt > 16) {
    std::ostringstream os;
    os << "brute_force_maximal: refusing grid " << Ru << "x" << Rv << "x" << Rt
       << "; cost ~" << static_cast<double>(Ru) * Rv * Rt * Ru * Rv * Rt * Ru * Rv * Rt
       << " cell visits";
    throw RefusalError(os.str());
  }
  const double hu = f.cell_size(0), hv = f.cell_size(1), ht = f.cell_size(2);
  const double cv = f.cell_volume();
  GridField out;
  out.box = f.box;
  out.res = f.res;
  out.samples.assign(f.size(), 0.0);

  auto fabs_at = [&](int i, int j, int k) {
    return std::abs(f.samples[(static_cast<std::size_t>(i) * Rv + j) * Rt + k]);
  };

  if (params.mu == 0.0) {
    // Incremental window expansion, independent of the summed-area path.
    std::vector<double> T(static_cast<std::size_t>(Ru) * Rv * Rt);
    std::vector<double> B(static_cast<std::size_t>(Ru) * Rv * Rt);
    auto t_at = [&](int i, int j, int m) -> double& {
      return T[(static_cast<std::size_t>(i) * Rv + j) * Rt + m];
    };
    auto b_at = [&](int i, int mv, int mt) -> double& {
      return B[(static_cast<std::size_t>(i) * Rv + mv) * Rt + mt];
    };
    for (int ix = 0; ix < Ru; ++ix)
      for (int iy = 0; iy < Rv; ++iy)
        for (int iz = 0; iz < Rt; ++iz) {
          for (int i = 0; i < Ru; ++i)
            for (int j = 0; j < Rv; ++j)
              for (int m = 0; m < Rt; ++m) {
                double v = m == 0 ? fabs_at(i, j, iz) : t_at(i, j, m - 1);
                if (m > 0) {
                  if (iz - m >= 0) v += fabs_at(i, j, iz - m);
                  if (iz + m < Rt) v += fabs_at(i, j, iz + m);
                }
                t_at(i, j, m) = v;
              }
          for (int i = 0; i < Ru; ++i)
            for (int mv = 0; mv < Rv; ++mv)
              for (int mt = 0; mt < Rt; ++mt) {
                double v = mv == 0 ? t_at(i, iy, mt) : b_at(i, mv - 1, mt);
                if (mv > 0) {
                  if (iy - mv >= 0) v += t_at(i, iy - mv, mt);
                  if (iy + mv < Rv) v += t_at(i, iy + mv, mt);
                }
                b_at(i, mv, mt) = v;
              }
          double best = 0.0;
          for (int mu_ = 0; mu_ < Ru; ++mu_) {
            for (int mv = 0; mv < Rv; ++mv)
              for (int mt = 0; mt < Rt; ++mt) {
                double s = 0.0;
                for (int di = -mu_; di <= mu_; ++di) {
                  const int i = ix + di;
                  if (i >= 0 && i < Ru) s += b_at(i, mv, mt);
                }
                const double vol = (2 * mu_ + 1) * hu * (2 * mv + 1) * hv * (2 * mt + 1) * ht;
                best = std::max(best, std::pow(vol, gamma - 1.0) * s * cv);
              }
          }
          out.samples[(static_cast<std::size_t>(ix) * Rv + iy) * Rt + iz] = best;
        }
  } else {
    // Direct sheared sums; slow, intended for <= 8 cells per axis.
    for (int ix = 0; ix < Ru; ++ix)
      for (int iy = 0; iy < Rv; ++iy)
        for (int iz = 0; iz < Rt; ++iz) {
          const double xu = f.center_coord(0, ix), xv = f.center_coord(1, iy),
                       xt = f.center_coord(2, iz);
          double best = 0.0;
          for (int mu_ = 0; mu_ < Ru; ++mu_)
            for (int mv = 0; mv < Rv; ++mv)
              for (int mt = 0; mt < Rt; ++mt) {
                const double lu = (mu_ + 0.5) * hu, lv = (mv + 0.5) * hv, lt = (mt + 0.5) * ht;
                double s = 0.0;
                for (int i = std::max(0, ix - mu_); i <= std::min(Ru - 1, ix + mu_); ++i)
                  for (int j = std::max(0, iy - mv); j <= std::min(Rv - 1, iy + mv); ++j) {
                    const double a = f.center_coord(0, i), b = f.center_coord(1, j);
                    const double tc = xt + params.mu * (xu * b - xv * a);
                    const double t0 = tc - lt, t1 = tc + lt;
                    double colsum = 0.0;
                    for (int kk = 0; kk < Rt; ++kk) {
                      const double clo = f.box.lo[2] + kk * ht;
                      const double ov = std::min(t1, clo + ht) - std::max(t0, clo);
                      if (ov > 0.0) colsum += fabs_at(i, j, kk) * ov;
                    }
                    s += colsum * hu * hv;
                  }
                const double vol = 2 * lu * 2 * lv * 2 * lt;
                best = std::max(best, std::pow(vol, gamma - 1.0) * s);
              }
          out.samples[(static_cast<std::size_t>(ix) * Rv + iy) * Rt + iz] = best;
        }
  }
  return out;
}

double level_set_measure(const GridField& g, double lambda) {
  require(lambda > 0.0, "level_set_measure: lambda must be positive");
  std::size_t count = 0;
  for (double s : g.samples)
    if (s > lambda) ++count;
  return g.cell_volume() * static_cast<double>(count);
}

}  // namespace hzlab
