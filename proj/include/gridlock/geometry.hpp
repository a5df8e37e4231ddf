#pragma once

#include <cstddef>
#include <vector>

namespace gridlock {

// All coordinates are page units (1/72 inch), origin top-left, y down.

struct Point {
  double x = 0;
  double y = 0;
};

inline bool operator==(const Point& a, const Point& b) {
  return a.x == b.x && a.y == b.y;
}

enum class Orientation { Horizontal, Vertical };

// Axis-aligned line segment. A horizontal segment's position is its y and
// [lo,hi] spans x; a vertical segment's position is its x and [lo,hi] spans y.
struct Segment {
  Orientation orientation = Orientation::Horizontal;
  double position = 0;
  double lo = 0;
  double hi = 0;

  double length() const { return hi - lo; }
};

inline bool operator==(const Segment& a, const Segment& b) {
  return a.orientation == b.orientation && a.position == b.position &&
         a.lo == b.lo && a.hi == b.hi;
}

struct Rect {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double cx() const { return (x0 + x1) / 2; }
  double cy() const { return (y0 + y1) / 2; }
  bool contains(const Point& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

inline bool operator==(const Rect& a, const Rect& b) {
  return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
}

struct Tolerances {
  double line_snap_tol = 2.0;   // max position gap for collinearity / snapping
  double edge_cover_ratio = 0.8;  // fraction of a unit interval a rule must cover
  double join_tol = 3.0;        // max endpoint gap bridged when joining segments
  double overlap_frac = 0.5;    // span/cell overlap threshold, in char widths
};

// Consolidate same-orientation segments: segments whose positions differ by
// at most line_snap_tol and whose intervals overlap or gap by at most
// join_tol are merged (union interval, length-weighted mean position).
// Result is sorted by (position, lo). Throws InvalidInputError on mixed
// orientations.
std::vector<Segment> merge_collinear(const std::vector<Segment>& segments,
                                     const Tolerances& tol);

// Intersection-over-union of two rects, in [0,1].
double rect_iou(const Rect& a, const Rect& b);

struct Cluster1D {
  double canonical = 0;                // mean of members
  std::vector<std::size_t> members;    // indices into the input list
};

// Single-linkage clustering of 1-D values: sort, then cut wherever the gap
// between neighbors exceeds tol. Clusters come back sorted by canonical.
// Throws InvalidInputError on empty input.
std::vector<Cluster1D> snap_1d(const std::vector<double>& values, double tol);

}  // namespace gridlock
