#include "hzlab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hzlab/errors.hpp"

namespace hzlab {

Rect::Rect(std::vector<double> center_, std::vector<double> half_)
    : center(std::move(center_)), half(std::move(half_)) {
  require(!center.empty() && center.size() == half.size(), "Rect: center/half size mismatch");
  for (double h : half) require(std::isfinite(h) && h > 0.0, "Rect: half-lengths must be positive");
  for (double c : center) require(std::isfinite(c), "Rect: center must be finite");
}

double Rect::volume() const {
  double v = 1.0;
  for (double h : half) v *= 2.0 * h;
  return v;
}

bool Rect::intersects(const Rect& other) const {
  for (int a = 0; a < dims(); ++a)
    if (hi(a) <= other.lo(a) || other.hi(a) <= lo(a)) return false;
  return true;
}

bool Rect::clip_to(const Rect& other, Rect& out) const {
  std::vector<double> c(dims()), h(dims());
  for (int a = 0; a < dims(); ++a) {
    const double l = std::max(lo(a), other.lo(a));
    const double r = std::min(hi(a), other.hi(a));
    if (r <= l) return false;
    c[a] = 0.5 * (l + r);
    h[a] = 0.5 * (r - l);
  }
  out = Rect(std::move(c), std::move(h));
  return true;
}

int RectFamily::dims() const { return rects.empty() ? 0 : rects.front().dims(); }

void RectFamily::validate() const {
  require(!rects.empty(), "RectFamily: must be nonempty");
  for (const Rect& r : rects)
    require(r.dims() == dims(), "RectFamily: mixed dimensions");
}

namespace {

/// Endpoint-compressed grid shared by the exact-volume evaluators.
struct Compressed {
  int d;
  std::vector<std::vector<double>> cuts;   // sorted unique endpoints per axis
  std::vector<std::size_t> stride;         // cell strides, last axis fastest
  std::size_t n_cells;

  explicit Compressed(const std::vector<Rect>& rects) {
    d = rects.front().dims();
    cuts.resize(d);
    for (int a = 0; a < d; ++a) {
      for (const Rect& r : rects) {
        cuts[a].push_back(r.lo(a));
        cuts[a].push_back(r.hi(a));
      }
      std::sort(cuts[a].begin(), cuts[a].end());
      cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
    }
    stride.assign(d, 1);
    n_cells = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride[a] = n_cells;
      n_cells *= cuts[a].size() - 1;
    }
  }

  /// Per-axis cell index range [l, r) of a rectangle; endpoints are cuts,
  /// so the searches land exactly.
  void cell_range(const Rect& r, std::vector<std::size_t>& l, std::vector<std::size_t>& h) const {
    l.resize(d);
    h.resize(d);
    for (int a = 0; a < d; ++a) {
      l[a] = std::lower_bound(cuts[a].begin(), cuts[a].end(), r.lo(a)) - cuts[a].begin();
      h[a] = std::lower_bound(cuts[a].begin(), cuts[a].end(), r.hi(a)) - cuts[a].begin();
    }
  }

  double cell_volume(const std::vector<std::size_t>& idx) const {
    double v = 1.0;
    for (int a = 0; a < d; ++a) v *= cuts[a][idx[a] + 1] - cuts[a][idx[a]];
    return v;
  }

  /// Apply fn to every cell index tuple inside [l, r) per axis.
  template <class Fn>
  void for_cells(const std::vector<std::size_t>& l, const std::vector<std::size_t>& h,
                 Fn&& fn) const {
    std::vector<std::size_t> cur(l);
    for (int a = 0; a < d; ++a)
      if (l[a] >= h[a]) return;
    while (true) {
      fn(cur);
      int a = d - 1;
      for (; a >= 0; --a) {
        if (++cur[a] < h[a]) break;
        cur[a] = l[a];
      }
      if (a < 0) break;
    }
  }

  std::size_t flat(const std::vector<std::size_t>& idx) const {
    std::size_t p = 0;
    for (int a = 0; a < d; ++a) p += idx[a] * stride[a];
    return p;
  }
};

}  // namespace

double union_volume(const std::vector<Rect>& rects) {
  if (rects.empty()) return 0.0;
  const Compressed cg(rects);
  std::vector<char> covered(cg.n_cells, 0);
  std::vector<std::size_t> l, h;
  for (const Rect& r : rects) {
    cg.cell_range(r, l, h);
    cg.for_cells(l, h, [&](const std::vector<std::size_t>& idx) { covered[cg.flat(idx)] = 1; });
  }
  double vol = 0.0;
  std::vector<std::size_t> lo(cg.d, 0), hi(cg.d);
  for (int a = 0; a < cg.d; ++a) hi[a] = cg.cuts[a].size() - 1;
  cg.for_cells(lo, hi, [&](const std::vector<std::size_t>& idx) {
    if (covered[cg.flat(idx)]) vol += cg.cell_volume(idx);
  });
  return vol;
}

Rect triple_t(const Rect& r) {
  Rect out = r;
  out.half.back() *= 3.0;
  return out;
}

double indicator_lp(const std::vector<Rect>& rects, double p) {
  require(p > 1.0, "indicator_lp: need p > 1");
  if (rects.empty()) return 0.0;
  const Compressed cg(rects);
  std::vector<int> count(cg.n_cells, 0);
  std::vector<std::size_t> l, h;
  for (const Rect& r : rects) {
    cg.cell_range(r, l, h);
    cg.for_cells(l, h, [&](const std::vector<std::size_t>& idx) { ++count[cg.flat(idx)]; });
  }
  double total = 0.0;
  std::vector<std::size_t> lo(cg.d, 0), hi(cg.d);
  for (int a = 0; a < cg.d; ++a) hi[a] = cg.cuts[a].size() - 1;
  cg.for_cells(lo, hi, [&](const std::vector<std::size_t>& idx) {
    const int c = count[cg.flat(idx)];
    if (c > 0) total += cg.cell_volume(idx) * std::pow(static_cast<double>(c), p);
  });
  return total;
}

CoverReport select_cover(const RectFamily& family, const std::vector<double>& p_values) {
  family.validate();
  const std::size_t m = family.rects.size();

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return family.rects[i].half.back() > family.rects[j].half.back();
  });

  CoverReport report;
  std::vector<Rect> selected_rects;
  std::vector<Rect> selected_tripled;
  std::vector<Rect> clipped;
  for (std::size_t pos = 0; pos < m; ++pos) {
    const Rect& r = family.rects[order[pos]];
    clipped.clear();
    Rect piece;
    for (const Rect& s : selected_tripled)
      if (s.intersects(r) && s.clip_to(r, piece)) clipped.push_back(piece);
    const double overlap = union_volume(clipped);
    const double vol = r.volume();
    SelectionDecision dec;
    dec.input_index = order[pos];
    dec.volume = vol;
    dec.overlap = overlap;
    dec.last_selected = selected_rects.size();
    dec.selected = overlap < 0.5 * vol;
    if (dec.selected) {
      report.selected.push_back(order[pos]);
      selected_rects.push_back(r);
      selected_tripled.push_back(triple_t(r));
    }
    report.trace.push_back(std::move(dec));
  }

  report.union_all = union_volume(family.rects);
  report.union_selected = union_volume(selected_rects);
  report.comparability = report.union_all / report.union_selected;
  report.p_values = p_values;
  for (double p : p_values) {
    const double norm = indicator_lp(selected_rects, p);
    report.indicator_norms.push_back(norm);
    report.indicator_ratios.push_back(norm / report.union_selected);
  }
  return report;
}

void write_family_csv(const std::string& path, const RectFamily& family) {
  family.validate();
  std::ofstream out(path);
  require(out.good(), "write_family_csv: cannot open " + path);
  const int d = family.dims();
  out << "# rect family, dims=" << d << ", rows: center then half-lengths\n";
  char buf[32];
  for (const Rect& r : family.rects) {
    for (int a = 0; a < d; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", r.center[a]);
      out << buf << ',';
    }
    for (int a = 0; a < d; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", r.half[a]);
      out << buf << (a + 1 < d ? "," : "\n");
    }
  }
}

RectFamily read_family_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "read_family_csv: cannot open " + path);
  RectFamily fam;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    require(vals.size() >= 2 && vals.size() % 2 == 0, "read_family_csv: malformed row");
    const std::size_t d = vals.size() / 2;
    fam.rects.emplace_back(std::vector<double>(vals.begin(), vals.begin() + d),
                           std::vector<double>(vals.begin() + d, vals.end()));
  }
  fam.validate();
  return fam;
}

void write_cover_report_csv(const std::string& path, const CoverReport& report,
                            const std::string& header_note) {
  std::ofstream out(path);
  require(out.good(), "write_cover_report_csv: cannot open " + path);
  char buf[32];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  out << "# " << header_note << "\n";
  out << "# selected=";
  for (std::size_t i = 0; i < report.selected.size(); ++i)
    out << (i ? ";" : "") << report.selected[i];
  out << "\n";
  out << "union_all," << fmt(report.union_all) << "\n";
  out << "union_selected," << fmt(report.union_selected) << "\n";
  out << "comparability," << fmt(report.comparability) << "\n";
  for (std::size_t i = 0; i < report.p_values.size(); ++i) {
    out << "indicator_lp_p" << fmt(report.p_values[i]) << "," << fmt(report.indicator_norms[i])
        << "," << fmt(report.indicator_ratios[i]) << "\n";
  }
  out << "input_index,selected,overlap,volume,selected_count_before\n";
  for (const SelectionDecision& d : report.trace)
    out << d.input_index << ',' << (d.selected ? 1 : 0) << ',' << fmt(d.overlap) << ','
        << fmt(d.volume) << ',' << d.last_selected << "\n";
}

}  // namespace hzlab
