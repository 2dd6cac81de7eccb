#include "hzlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hzlab {

Box::Box(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  require(!lo.empty() && lo.size() == hi.size(), "Box: lo/hi size mismatch");
  for (std::size_t a = 0; a < lo.size(); ++a) {
    require(std::isfinite(lo[a]) && std::isfinite(hi[a]) && lo[a] < hi[a],
            "Box: need finite lo < hi on every axis");
  }
}

Box Box::symmetric(const std::vector<double>& half) {
  std::vector<double> lo(half.size()), hi(half.size());
  for (std::size_t a = 0; a < half.size(); ++a) {
    require(half[a] > 0.0, "Box::symmetric: half widths must be positive");
    lo[a] = -half[a];
    hi[a] = half[a];
  }
  return Box(std::move(lo), std::move(hi));
}

double Box::volume() const {
  double v = 1.0;
  for (int a = 0; a < dims(); ++a) v *= extent(a);
  return v;
}

Box Box::dilated(double r, double s, double lam, int n) const {
  require(r > 0.0 && s > 0.0 && lam > 0.0, "Box::dilated: scales must be positive");
  require(dims() == 2 * n + 1, "Box::dilated: box is not a 2n+1 layout");
  std::vector<double> l(lo), h(hi);
  for (int a = 0; a < n; ++a) { l[a] *= r; h[a] *= r; }
  for (int a = n; a < 2 * n; ++a) { l[a] *= s; h[a] *= s; }
  l[2 * n] *= r * s * lam;
  h[2 * n] *= r * s * lam;
  return Box(std::move(l), std::move(h));
}

double GridField::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dims(); ++a) v *= cell_size(a);
  return v;
}

void GridField::cell_center(std::size_t flat, double* out) const {
  for (int a = dims() - 1; a >= 0; --a) {
    const std::size_t r = static_cast<std::size_t>(res[a]);
    out[a] = center_coord(a, static_cast<int>(flat % r));
    flat /= r;
  }
}

std::size_t GridField::flat_index(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dims(); ++a) f = f * res[a] + idx[a];
  return f;
}

GridField sample_field(const Box& box, const std::vector<int>& res, const PointFn& f) {
  require(res.size() == static_cast<std::size_t>(box.dims()),
          "sample_field: resolution rank mismatch");
  std::size_t total = 1;
  for (int r : res) {
    require(r >= 1, "sample_field: resolutions must be positive");
    total *= static_cast<std::size_t>(r);
  }
  GridField g;
  g.box = box;
  g.res = res;
  g.samples.resize(total);
  std::vector<double> x(box.dims());
  for (std::size_t i = 0; i < total; ++i) {
    g.cell_center(i, x.data());
    const double val = f(x.data());
    if (!std::isfinite(val)) {
      std::ostringstream os;
      os << "sample_field: non-finite sample at cell " << i << " (";
      for (int a = 0; a < box.dims(); ++a) os << (a ? "," : "") << x[a];
      os << ")";
      throw SamplingError(os.str());
    }
    g.samples[i] = val;
  }
  return g;
}

double lp_norm(const GridField& g, double p) {
  require(p >= 1.0, "lp_norm: p must be >= 1");
  double acc = 0.0;
  for (double s : g.samples) acc += std::pow(std::abs(s), p);
  return std::pow(acc * g.cell_volume(), 1.0 / p);
}

PointFn dilate_fn(PointFn f, double r, double s, double lam, int n) {
  require(r > 0.0 && s > 0.0 && lam > 0.0, "dilate_fn: scales must be positive");
  const int d = 2 * n + 1;
  return [f = std::move(f), r, s, lam, n, d](const double* x) {
    std::vector<double> y(d);
    for (int a = 0; a < n; ++a) y[a] = x[a] / r;
    for (int a = n; a < 2 * n; ++a) y[a] = x[a] / s;
    y[d - 1] = x[d - 1] / (r * s * lam);
    return f(y.data());
  };
}

PointFn gaussian_fn(std::vector<double> widths) {
  return [w = std::move(widths)](const double* x) {
    double e = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) {
      const double z = x[a] / w[a];
      e += z * z;
    }
    return std::exp(-e);
  };
}

PointFn indicator_fn(Box support) {
  return [b = std::move(support)](const double* x) {
    for (int a = 0; a < b.dims(); ++a)
      if (x[a] < b.lo[a] || x[a] > b.hi[a]) return 0.0;
    return 1.0;
  };
}

void write_field_csv(const std::string& path, const GridField& g, int n, double mu) {
  std::ofstream out(path);
  require(out.good(), "write_field_csv: cannot open " + path);
  char buf[64];
  out << "# hzlab gridfield v1\n";
  std::snprintf(buf, sizeof buf, "%.17g", mu);
  out << "# n=" << n << " mu=" << buf << " axes=" << g.dims() << "\n";
  auto row = [&](const char* tag, const std::vector<double>& v) {
    out << "# " << tag << "=";
    for (std::size_t a = 0; a < v.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", v[a]);
      out << (a ? "," : "") << buf;
    }
    out << "\n";
  };
  row("lo", g.box.lo);
  row("hi", g.box.hi);
  out << "# res=";
  for (int a = 0; a < g.dims(); ++a) out << (a ? "," : "") << g.res[a];
  out << "\n# columns: coordinates...,value\n";
  std::vector<double> x(g.dims());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.cell_center(i, x.data());
    for (int a = 0; a < g.dims(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", x[a]);
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", g.samples[i]);
    out << buf << "\n";
  }
}

namespace {
std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}
}  // namespace

GridField read_field_csv(const std::string& path, int* n_out, double* mu_out) {
  std::ifstream in(path);
  require(in.good(), "read_field_csv: cannot open " + path);
  std::string line;
  std::vector<double> lo, hi;
  std::vector<int> res;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto grab = [&](const std::string& key) -> std::string {
        auto pos = line.find(key + "=");
        if (pos == std::string::npos) return {};
        auto start = pos + key.size() + 1;
        auto end = line.find(' ', start);
        return line.substr(start, end == std::string::npos ? end : end - start);
      };
      if (auto s = grab("lo"); !s.empty()) lo = parse_list(s);
      if (auto s = grab("hi"); !s.empty()) hi = parse_list(s);
      if (auto s = grab("res"); !s.empty())
        for (double v : parse_list(s)) res.push_back(static_cast<int>(v));
      if (n_out) {
        if (auto s = grab("n"); !s.empty()) *n_out = std::stoi(s);
      }
      if (mu_out) {
        if (auto s = grab("mu"); !s.empty()) *mu_out = std::stod(s);
      }
      continue;
    }
    auto last = line.rfind(',');
    require(last != std::string::npos, "read_field_csv: malformed row");
    values.push_back(std::stod(line.substr(last + 1)));
  }
  require(!lo.empty() && lo.size() == hi.size() && res.size() == lo.size(),
          "read_field_csv: missing or inconsistent header");
  GridField g;
  g.box = Box(lo, hi);
  g.res = res;
  std::size_t total = 1;
  for (int r : res) total *= static_cast<std::size_t>(r);
  require(values.size() == total, "read_field_csv: sample count does not match resolution");
  g.samples = std::move(values);
  return g;
}

}  // namespace hzlab
