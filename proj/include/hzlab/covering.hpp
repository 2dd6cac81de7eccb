#ifndef HZLAB_COVERING_HPP
#define HZLAB_COVERING_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace hzlab {

/// Axis-aligned rectangle at an absolute position.
struct Rect {
  std::vector<double> center;
  std::vector<double> half;

  Rect() = default;
  Rect(std::vector<double> center_, std::vector<double> half_);

  int dims() const { return static_cast<int>(center.size()); }
  double lo(int a) const { return center[a] - half[a]; }
  double hi(int a) const { return center[a] + half[a]; }
  double volume() const;
  bool intersects(const Rect& other) const;

  /// Intersection clipped to `other`; empty optional-like: returns false if disjoint.
  bool clip_to(const Rect& other, Rect& out) const;
};

struct RectFamily {
  std::vector<Rect> rects;

  int dims() const;
  void validate() const;
};

/// Exact Lebesgue volume of the union, by coordinate compression: mark the
/// cells of the endpoint-induced grid covered by any rectangle.
double union_volume(const std::vector<Rect>& rects);

/// Same center, t half-length (last axis) tripled, others unchanged.
Rect triple_t(const Rect& r);

/// Exact integral of (sum of indicators)^p over the compressed grid.
double indicator_lp(const std::vector<Rect>& rects, double p);

/// One row of the selection trace: what happened to the rectangle at
/// sorted position `order`.
struct SelectionDecision {
  std::size_t input_index = 0;    // index in the caller's family
  bool selected = false;
  double overlap = 0.0;           // vol(R cap union of intersecting selected tripled)
  double volume = 0.0;            // vol(R)
  std::size_t last_selected = 0;  // M: selected count at decision time
};

struct CoverReport {
  std::vector<std::size_t> selected;      // input indices, in selection order
  std::vector<SelectionDecision> trace;   // one entry per rectangle, sorted order
  double union_all = 0.0;                 // vol(union R_j)
  double union_selected = 0.0;            // vol(union hat-R_k), untripled
  double comparability = 0.0;             // union_all / union_selected
  std::vector<double> p_values;
  std::vector<double> indicator_norms;    // ||sum chi_{hat-R}||_p^p per requested p
  std::vector<double> indicator_ratios;   // norm / union_selected
};

/// Greedy selection: sort by nonincreasing t half-length (stable), keep the
/// first rectangle, then keep R iff the part of R already covered by the
/// t-tripled previously kept rectangles has volume < vol(R)/2.
CoverReport select_cover(const RectFamily& family, const std::vector<double>& p_values = {1.5, 2.0, 3.0});

/// CSV I/O: rows of center coordinates then half-lengths.
void write_family_csv(const std::string& path, const RectFamily& family);
RectFamily read_family_csv(const std::string& path);
void write_cover_report_csv(const std::string& path, const CoverReport& report,
                            const std::string& header_note);

}  // namespace hzlab

#endif
