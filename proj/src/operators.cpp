#include "hzlab/operators.hpp"

#include <cmath>
#include <cstring>

#include "hzlab/parallel.hpp"

namespace hzlab {

namespace {

double block_norm(const double* x, int count) {
  double s = 0.0;
  for (int i = 0; i < count; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

/// Row decomposition of a field: all axes but the last ("outer"), times the
/// fastest-varying t axis. Rows of all-zero samples are flagged so sparse
/// inputs (point masses) cost O(N_out).
struct RowLayout {
  int d = 0;
  int n_t = 0;                  // cells along the last axis
  std::size_t rows = 0;
  std::vector<int> idx;         // rows * (d-1) outer multi-indices
  std::vector<double> center;   // rows * (d-1) outer center coordinates
  std::vector<char> nonzero;
};

RowLayout build_rows(const GridField& f) {
  RowLayout L;
  L.d = f.dims();
  L.n_t = f.res[L.d - 1];
  L.rows = f.size() / L.n_t;
  const int od = L.d - 1;
  L.idx.resize(L.rows * od);
  L.center.resize(L.rows * od);
  L.nonzero.assign(L.rows, 0);
  std::vector<int> cur(od, 0);
  for (std::size_t r = 0; r < L.rows; ++r) {
    for (int a = 0; a < od; ++a) {
      L.idx[r * od + a] = cur[a];
      L.center[r * od + a] = f.center_coord(a, cur[a]);
    }
    const double* row = f.samples.data() + r * L.n_t;
    for (int j = 0; j < L.n_t; ++j) {
      if (row[j] != 0.0) { L.nonzero[r] = 1; break; }
    }
    for (int a = od - 1; a >= 0; --a) {
      if (++cur[a] < f.res[a]) break;
      cur[a] = 0;
    }
  }
  return L;
}

/// Kernel values over all integer cell offsets, row-major with per-axis
/// extent 2*res[a]-1 (offset index o+res[a]-1).
std::vector<double> build_offset_table(const GridField& f, const DiffKernel& kernel,
                                       std::vector<int>& tdim) {
  const int d = f.dims();
  tdim.resize(d);
  std::size_t tsize = 1;
  for (int a = 0; a < d; ++a) {
    tdim[a] = 2 * f.res[a] - 1;
    tsize *= static_cast<std::size_t>(tdim[a]);
  }
  std::vector<double> table(tsize);
  std::vector<double> h(d);
  for (int a = 0; a < d; ++a) h[a] = f.cell_size(a);
  parallel_for(tsize, [&](std::size_t b, std::size_t e) {
    std::vector<double> diff(d);
    for (std::size_t i = b; i < e; ++i) {
      std::size_t rem = i;
      for (int a = d - 1; a >= 0; --a) {
        const int o = static_cast<int>(rem % tdim[a]) - (f.res[a] - 1);
        rem /= tdim[a];
        diff[a] = o * h[a];
      }
      table[i] = kernel(diff.data());
    }
  });
  return table;
}

/// Twist shift mu*(x_u . y_v - x_v . y_u) from outer center coordinates.
double twist_shift(const double* xc, const double* yc, double mu, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += xc[i] * yc[n + i] - xc[n + i] * yc[i];
  return mu * s;
}

/// f(xi, eta, tau_j + shift) for every j of a row, by linear interpolation
/// along t, zero outside the box.
void shifted_row(const double* row, int n_t, double shift, double h_t, double* out) {
  const double off = shift / h_t;
  const double fl = std::floor(off);
  const int k = static_cast<int>(fl);
  const double w = off - fl;
  for (int j = 0; j < n_t; ++j) {
    const int jj = j + k;
    double v = 0.0;
    if (jj >= 0 && jj < n_t) v += (1.0 - w) * row[jj];
    if (jj + 1 >= 0 && jj + 1 < n_t) v += w * row[jj + 1];
    out[j] = v;
  }
}

}  // namespace

double half_cell_diagonal(const GridField& g) {
  double s = 0.0;
  for (int a = 0; a < g.dims(); ++a) {
    const double h = g.cell_size(a);
    s += h * h;
  }
  return 0.5 * std::sqrt(s);
}

DiffKernel make_riesz_kernel(const GridField& g, const RieszParams& rp) {
  require(g.dims() == rp.N, "make_riesz_kernel: field dimension != N");
  const double hd = half_cell_diagonal(g);
  const int N = rp.N;
  const double expo = rp.a - rp.N;
  return [hd, N, expo](const double* diff) {
    double nx = block_norm(diff, N);
    if (nx < hd) nx = hd;
    return std::pow(nx, expo);
  };
}

DiffKernel make_omega_kernel(const GridField& g, const FSParams& fs) {
  require(g.dims() == 2 * fs.n + 1, "make_omega_kernel: field is not a 2n+1 layout");
  const double hd = half_cell_diagonal(g);
  const int n = fs.n, d = 2 * fs.n + 1;
  const double expo = fs.n + 1.0 - fs.delta;
  // shifted evaluation point for near-origin cells: (c,...,c), |.| = hd
  const double c = hd / std::sqrt(static_cast<double>(d));
  const double q_shift = 2.0 * n * c * c + c;
  return [hd, n, d, expo, q_shift](const double* diff) {
    if (block_norm(diff, d) < hd) return std::pow(1.0 / q_shift, expo);
    double q = 0.0;
    for (int i = 0; i < 2 * n; ++i) q += diff[i] * diff[i];
    q += std::abs(diff[2 * n]);
    return std::pow(1.0 / q, expo);
  };
}

namespace {

// Per-block floors of the singular-cell rule: a |u|, |v| or |t| value closer
// to its singular plane than half the sub-block cell diagonal is clamped to
// that distance. Keeping the blocks separate preserves exact covariance of
// the quadrature under the per-axis dilations the sweeps measure.
struct SingularFloors {
  double floor_u, floor_v, floor_t;
  int n;
};

SingularFloors make_floors(const GridField& g, int n) {
  require(g.dims() == 2 * n + 1, "kernel: field is not a 2n+1 layout");
  SingularFloors fl;
  fl.n = n;
  double su = 0.0, sv = 0.0;
  for (int a = 0; a < n; ++a) {
    su += g.cell_size(a) * g.cell_size(a);
    sv += g.cell_size(n + a) * g.cell_size(n + a);
  }
  fl.floor_u = 0.5 * std::sqrt(su);
  fl.floor_v = 0.5 * std::sqrt(sv);
  fl.floor_t = 0.5 * g.cell_size(2 * n);
  return fl;
}

}  // namespace

DiffKernel make_V_kernel(const GridField& g, const KernelParams& k, double bracket_scale) {
  require(bracket_scale > 0.0, "make_V_kernel: bracket scale must be positive");
  const SingularFloors fl = make_floors(g, k.n);
  return [fl, k, bracket_scale](const double* diff) {
    const double nu = std::max(block_norm(diff, fl.n), fl.floor_u);
    const double nv = std::max(block_norm(diff + fl.n, fl.n), fl.floor_v);
    const double nt = std::max(std::abs(diff[2 * fl.n]), fl.floor_t);
    const double x = nu * nv / (nt * bracket_scale);
    return std::pow(nu, k.alpha - k.n) * std::pow(nv, k.alpha - k.n) *
           std::pow(nt, k.beta - 1.0) * std::pow(x + 1.0 / x, -k.theta);
  };
}

DiffKernel make_separable_kernel(const GridField& g, const KernelParams& k) {
  const SingularFloors fl = make_floors(g, k.n);
  const double gam = k.gamma();
  return [fl, gam](const double* diff) {
    const double nu = std::max(block_norm(diff, fl.n), fl.floor_u);
    const double nv = std::max(block_norm(diff + fl.n, fl.n), fl.floor_v);
    const double nt = std::max(std::abs(diff[2 * fl.n]), fl.floor_t);
    return std::pow(nu, fl.n * gam - fl.n) * std::pow(nv, fl.n * gam - fl.n) *
           std::pow(nt, gam - 1.0);
  };
}

GridField apply_diff_kernel(const GridField& f, const DiffKernel& kernel, double mu, int twist_n) {
  const int d = f.dims();
  const bool twist = twist_n > 0 && mu != 0.0;
  if (twist)
    require(d == 2 * twist_n + 1, "apply_diff_kernel: twist requires a 2n+1 layout");

  std::vector<int> tdim;
  const std::vector<double> table = build_offset_table(f, kernel, tdim);
  const RowLayout L = build_rows(f);
  const int od = d - 1, n_t = L.n_t;
  const double h_t = f.cell_size(d - 1);
  const double cell_vol = f.cell_volume();

  GridField out;
  out.box = f.box;
  out.res = f.res;
  out.samples.assign(f.size(), 0.0);

  parallel_for(L.rows, [&](std::size_t rb, std::size_t re) {
    std::vector<double> frow(n_t);
    for (std::size_t rx = rb; rx < re; ++rx) {
      double* orow = out.samples.data() + rx * n_t;
      const int* xi = L.idx.data() + rx * od;
      const double* xc = L.center.data() + rx * od;
      for (std::size_t ry = 0; ry < L.rows; ++ry) {
        if (!L.nonzero[ry]) continue;
        const int* yi = L.idx.data() + ry * od;
        std::size_t tb = 0;
        for (int a = 0; a < od; ++a)
          tb = tb * tdim[a] + static_cast<std::size_t>(xi[a] - yi[a] + f.res[a] - 1);
        tb = tb * tdim[od] + static_cast<std::size_t>(n_t - 1);
        const double* row = f.samples.data() + ry * n_t;
        const double* fr = row;
        if (twist) {
          const double shift = twist_shift(xc, L.center.data() + ry * od, mu, twist_n);
          shifted_row(row, n_t, shift, h_t, frow.data());
          fr = frow.data();
        }
        for (int xt = 0; xt < n_t; ++xt) {
          const double* kp = table.data() + tb + xt;
          double acc = 0.0;
          for (int j = 0; j < n_t; ++j) acc += fr[j] * kp[-j];
          orow[xt] += acc;
        }
      }
      for (int xt = 0; xt < n_t; ++xt) orow[xt] *= cell_vol;
    }
  });
  return out;
}

std::vector<double> apply_diff_kernel_at(const GridField& f, const DiffKernel& kernel,
                                         double mu, int twist_n,
                                         const std::vector<std::vector<double>>& points) {
  const int d = f.dims();
  const bool twist = twist_n > 0 && mu != 0.0;
  const RowLayout L = build_rows(f);
  const int od = d - 1, n_t = L.n_t;
  const double h_t = f.cell_size(d - 1);
  const double cell_vol = f.cell_volume();
  std::vector<double> t_centers(n_t);
  for (int j = 0; j < n_t; ++j) t_centers[j] = f.center_coord(d - 1, j);

  std::vector<double> result(points.size());
  std::vector<double> frow(n_t), diff(d);
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const std::vector<double>& x = points[pi];
    require(static_cast<int>(x.size()) == d, "apply_diff_kernel_at: point dimension mismatch");
    double acc = 0.0;
    for (std::size_t ry = 0; ry < L.rows; ++ry) {
      if (!L.nonzero[ry]) continue;
      const double* yc = L.center.data() + ry * od;
      const double* row = f.samples.data() + ry * n_t;
      const double* fr = row;
      if (twist) {
        const double shift = twist_shift(x.data(), yc, mu, twist_n);
        shifted_row(row, n_t, shift, h_t, frow.data());
        fr = frow.data();
      }
      for (int a = 0; a < od; ++a) diff[a] = x[a] - yc[a];
      for (int j = 0; j < n_t; ++j) {
        if (fr[j] == 0.0) continue;
        diff[od] = x[od] - t_centers[j];
        acc += fr[j] * kernel(diff.data());
      }
    }
    result[pi] = acc * cell_vol;
  }
  return result;
}

GridField riesz_apply(const GridField& f, const RieszParams& rp) {
  return apply_diff_kernel(f, make_riesz_kernel(f, rp), 0.0, 0);
}

std::vector<double> riesz_apply_at(const GridField& f, const RieszParams& rp,
                                   const std::vector<std::vector<double>>& points) {
  return apply_diff_kernel_at(f, make_riesz_kernel(f, rp), 0.0, 0, points);
}

GridField folland_stein_apply(const GridField& f, const FSParams& fs, const GroupParams& params) {
  require(fs.n == params.n, "folland_stein_apply: n mismatch");
  return apply_diff_kernel(f, make_omega_kernel(f, fs), params.mu, params.n);
}

GridField frac_integral_apply(const GridField& f, const KernelParams& k,
                              const GroupParams& params, double bracket_scale) {
  require(k.n == params.n, "frac_integral_apply: n mismatch");
  return apply_diff_kernel(f, make_V_kernel(f, k, bracket_scale), params.mu, params.n);
}

GridField separable_majorant_apply(const GridField& f, const KernelParams& k,
                                   const GroupParams& params) {
  require(k.n == params.n, "separable_majorant_apply: n mismatch");
  require(std::abs(k.theta - rho(k.alpha, k.beta, k.n)) <= 1e-12,
          "separable_majorant_apply: theta must equal rho(alpha, beta, n)");
  for (double s : f.samples)
    require(s >= 0.0, "separable_majorant_apply: majorant comparison requires f >= 0");

  if (params.mu != 0.0)
    return apply_diff_kernel(f, make_separable_kernel(f, k), params.mu, params.n);

  // mu = 0: factorized route. Inner t-integrals F(xi, eta, t) against the
  // |t - tau|^{g-1} factor, then the (u, v) sums against the power factors.
  const int d = f.dims(), n = k.n, od = d - 1;
  const RowLayout L = build_rows(f);
  const int n_t = L.n_t;
  const double gam = k.gamma();
  const SingularFloors fl = make_floors(f, n);
  const double h_t = f.cell_size(d - 1);

  std::vector<double> Kt(2 * n_t - 1);
  for (int o = -(n_t - 1); o <= n_t - 1; ++o) {
    const double nt = std::max(std::abs(o * h_t), fl.floor_t);
    Kt[o + n_t - 1] = std::pow(nt, gam - 1.0);
  }

  std::vector<double> F(f.size(), 0.0);
  parallel_for(L.rows, [&](std::size_t rb, std::size_t re) {
    for (std::size_t r = rb; r < re; ++r) {
      if (!L.nonzero[r]) continue;
      const double* row = f.samples.data() + r * n_t;
      double* frow = F.data() + r * n_t;
      for (int xt = 0; xt < n_t; ++xt) {
        const double* kp = Kt.data() + xt + n_t - 1;
        double acc = 0.0;
        for (int j = 0; j < n_t; ++j) acc += row[j] * kp[-j];
        frow[xt] = acc;
      }
    }
  });

  // Outer-offset table of |du|^{ng-n} |dv|^{ng-n}.
  std::vector<int> tdim(od);
  std::size_t tsize = 1;
  for (int a = 0; a < od; ++a) {
    tdim[a] = 2 * f.res[a] - 1;
    tsize *= static_cast<std::size_t>(tdim[a]);
  }
  std::vector<double> Kuv(tsize);
  {
    std::vector<double> diff(od);
    for (std::size_t i = 0; i < tsize; ++i) {
      std::size_t rem = i;
      for (int a = od - 1; a >= 0; --a) {
        const int o = static_cast<int>(rem % tdim[a]) - (f.res[a] - 1);
        rem /= tdim[a];
        diff[a] = o * f.cell_size(a);
      }
      const double nu = std::max(block_norm(diff.data(), n), fl.floor_u);
      const double nv = std::max(block_norm(diff.data() + n, n), fl.floor_v);
      Kuv[i] = std::pow(nu, n * gam - n) * std::pow(nv, n * gam - n);
    }
  }

  GridField out;
  out.box = f.box;
  out.res = f.res;
  out.samples.assign(f.size(), 0.0);
  const double cell_vol = f.cell_volume();

  parallel_for(L.rows, [&](std::size_t rb, std::size_t re) {
    for (std::size_t rx = rb; rx < re; ++rx) {
      double* orow = out.samples.data() + rx * n_t;
      const int* xi = L.idx.data() + rx * od;
      for (std::size_t ry = 0; ry < L.rows; ++ry) {
        if (!L.nonzero[ry]) continue;
        const int* yi = L.idx.data() + ry * od;
        std::size_t ti = 0;
        for (int a = 0; a < od; ++a)
          ti = ti * tdim[a] + static_cast<std::size_t>(xi[a] - yi[a] + f.res[a] - 1);
        const double kuv = Kuv[ti];
        const double* frow = F.data() + ry * n_t;
        for (int xt = 0; xt < n_t; ++xt) orow[xt] += kuv * frow[xt];
      }
      for (int xt = 0; xt < n_t; ++xt) orow[xt] *= cell_vol;
    }
  });
  return out;
}

}  // namespace hzlab
