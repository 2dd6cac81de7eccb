#ifndef HZLAB_KERNELS_HPP
#define HZLAB_KERNELS_HPP

#include <cmath>
#include <utility>

#include "hzlab/errors.hpp"
#include "hzlab/group.hpp"

namespace hzlab {

/// Sharp bracket exponent |alpha - n*beta| / (n+1).
inline double rho(double alpha, double beta, int n) {
  return std::abs(alpha - n * beta) / (n + 1);
}

/// Exponent tuple (alpha, beta, theta) of the Zygmund kernel. theta is a free
/// bracket exponent so sharpness sweeps below rho(alpha,beta,n) are possible;
/// with_rho() pins it to the sharp value.
struct KernelParams {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  int n = 1;

  KernelParams() = default;
  KernelParams(double a, double b, double th, int n_) : alpha(a), beta(b), theta(th), n(n_) {
    require(n >= 1, "KernelParams: n must be >= 1");
  }

  static KernelParams with_rho(double a, double b, int n_) {
    return KernelParams(a, b, rho(a, b, n_), n_);
  }

  double gamma() const { return (alpha + beta) / (n + 1); }
};

/// Order a and ambient dimension N of the Euclidean Riesz kernel |x|^{a-N}.
struct RieszParams {
  double a;
  int N;

  RieszParams(double a_, int N_) : a(a_), N(N_) {
    require(N >= 1, "RieszParams: N must be >= 1");
    require(a > 0.0 && a < static_cast<double>(N), "RieszParams: need 0 < a < N");
  }
};

/// Order delta of the Folland-Stein kernel on R^{2n+1}.
struct FSParams {
  double delta;
  int n;

  FSParams(double d, int n_) : delta(d), n(n_) {
    require(n >= 1, "FSParams: n must be >= 1");
    require(delta > 0.0 && delta < n + 1.0, "FSParams: need 0 < delta < n+1");
  }
};

inline double euclid_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

/// [x + 1/x]^{-theta}; invariant under x -> 1/x.
inline double bracket_factor(double x, double theta) {
  return std::pow(x + 1.0 / x, -theta);
}

/// Zygmund kernel from the scalar norms nu = |u|, nv = |v|, nt = |t|.
inline double eval_V_norms(double nu, double nv, double nt, const KernelParams& k) {
  if (nu == 0.0 || nv == 0.0 || nt == 0.0)
    throw SingularityError("eval_V: point lies on a singular plane");
  const double x = nu * nv / nt;
  return std::pow(nu, k.alpha - k.n) * std::pow(nv, k.alpha - k.n) *
         std::pow(nt, k.beta - 1.0) * bracket_factor(x, k.theta);
}

inline double eval_V(const GroupPoint& p, const KernelParams& k) {
  require(p.dim() == k.n, "eval_V: dimension mismatch");
  return eval_V_norms(euclid_norm(p.u), euclid_norm(p.v), std::abs(p.t), k);
}

/// Folland-Stein kernel [1/(|u|^2+|v|^2+|t|)]^{n+1-delta}.
inline double eval_Omega(const GroupPoint& p, const FSParams& fs) {
  require(p.dim() == fs.n, "eval_Omega: dimension mismatch");
  const double q = dot(p.u, p.u) + dot(p.v, p.v) + std::abs(p.t);
  if (q == 0.0) throw SingularityError("eval_Omega: singular at the origin");
  return std::pow(1.0 / q, fs.n + 1.0 - fs.delta);
}

/// Euclidean Riesz kernel |x|^{a-N}.
inline double eval_riesz(const std::vector<double>& x, const RieszParams& rp) {
  require(static_cast<int>(x.size()) == rp.N, "eval_riesz: dimension mismatch");
  const double nx = euclid_norm(x);
  if (nx == 0.0) throw SingularityError("eval_riesz: singular at the origin");
  return std::pow(nx, rp.a - rp.N);
}

/// The delta -> (alpha, beta) correspondence: alpha = delta/2 + (n-1)/2,
/// beta = delta/2 - (n-1)/2, so alpha + beta = delta.
inline std::pair<double, double> delta_to_alphabeta(double delta, int n) {
  require(n >= 1, "delta_to_alphabeta: n must be >= 1");
  require(delta > 0.0 && delta < n + 1.0, "delta_to_alphabeta: need 0 < delta < n+1");
  const double half = (n - 1) / 2.0;
  return {delta / 2.0 + half, delta / 2.0 - half};
}

/// Separable majorant kernel |u|^{ng-n}|v|^{ng-n}|t|^{g-1} with
/// g = (alpha+beta)/(n+1), from the scalar norms.
inline double separable_kernel_norms(double nu, double nv, double nt, const KernelParams& k) {
  if (nu == 0.0 || nv == 0.0 || nt == 0.0)
    throw SingularityError("separable_kernel: point lies on a singular plane");
  const double g = k.gamma();
  return std::pow(nu, k.n * g - k.n) * std::pow(nv, k.n * g - k.n) * std::pow(nt, g - 1.0);
}

/// True iff V <= separable majorant at p, up to 1e-12 relative slack.
/// Holds on the whole nonsingular domain when theta = rho(alpha, beta, n).
inline bool check_separable_bound(const GroupPoint& p, const KernelParams& k) {
  const double nu = euclid_norm(p.u), nv = euclid_norm(p.v), nt = std::abs(p.t);
  const double lhs = eval_V_norms(nu, nv, nt, k);
  const double rhs = separable_kernel_norms(nu, nv, nt, k);
  return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace hzlab

#endif
