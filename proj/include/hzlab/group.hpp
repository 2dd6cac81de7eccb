#ifndef HZLAB_GROUP_HPP
#define HZLAB_GROUP_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "hzlab/errors.hpp"

namespace hzlab {

/// Parameters of the real-variable Heisenberg model: sub-dimension n and
/// twist coefficient mu (mu = 0 is the abelian case).
struct GroupParams {
  int n = 1;
  double mu = 1.0;

  GroupParams() = default;
  GroupParams(int n_, double mu_) : n(n_), mu(mu_) {
    require(n >= 1, "GroupParams: n must be >= 1");
    require(std::isfinite(mu), "GroupParams: mu must be finite");
  }
};

/// A point (u, v, t) of R^n x R^n x R.
struct GroupPoint {
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;

  GroupPoint() = default;
  GroupPoint(std::vector<double> u_, std::vector<double> v_, double t_)
      : u(std::move(u_)), v(std::move(v_)), t(t_) {
    require(!u.empty() && u.size() == v.size(),
            "GroupPoint: u and v must have identical length n >= 1");
    for (double x : u) require(std::isfinite(x), "GroupPoint: non-finite u coordinate");
    for (double x : v) require(std::isfinite(x), "GroupPoint: non-finite v coordinate");
    require(std::isfinite(t), "GroupPoint: non-finite t coordinate");
  }

  /// Scalar convenience constructor for n = 1.
  GroupPoint(double u0, double v0, double t0)
      : GroupPoint(std::vector<double>{u0}, std::vector<double>{v0}, t0) {}

  int dim() const { return static_cast<int>(u.size()); }
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Group product (u,v,t)(x,y,s) = (u+x, v+y, t+s+mu(u.y - v.x)).
inline GroupPoint multiply(const GroupPoint& p, const GroupPoint& q, const GroupParams& params) {
  require(p.dim() == params.n && q.dim() == params.n, "multiply: dimension mismatch");
  GroupPoint out;
  out.u.resize(params.n);
  out.v.resize(params.n);
  for (int i = 0; i < params.n; ++i) {
    out.u[i] = p.u[i] + q.u[i];
    out.v[i] = p.v[i] + q.v[i];
  }
  out.t = p.t + q.t + params.mu * (dot(p.u, q.v) - dot(p.v, q.u));
  return out;
}

/// Group inverse: componentwise negation, independent of mu.
inline GroupPoint inverse(const GroupPoint& p) {
  GroupPoint out = p;
  for (double& x : out.u) x = -x;
  for (double& x : out.v) x = -x;
  out.t = -out.t;
  return out;
}

/// Two-parameter Zygmund dilation (u,v,t) -> (ru, sv, rst).
inline GroupPoint zygmund_dilate(const GroupPoint& p, double r, double s) {
  require(r > 0.0 && s > 0.0, "zygmund_dilate: scales must be positive");
  GroupPoint out = p;
  for (double& x : out.u) x *= r;
  for (double& x : out.v) x *= s;
  out.t *= r * s;
  return out;
}

/// Three-parameter dilation (u,v,t) -> (ru, sv, rs*lam*t); lam = 1 recovers
/// the Zygmund dilation.
inline GroupPoint aniso_dilate(const GroupPoint& p, double r, double s, double lam) {
  require(r > 0.0 && s > 0.0 && lam > 0.0, "aniso_dilate: scales must be positive");
  GroupPoint out = p;
  for (double& x : out.u) x *= r;
  for (double& x : out.v) x *= s;
  out.t *= r * s * lam;
  return out;
}

inline GroupPoint identity_point(int n) {
  return GroupPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0);
}

}  // namespace hzlab

#endif
