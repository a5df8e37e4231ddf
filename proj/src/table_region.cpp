#include "gridlock/table_region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridlock/raster_lines.hpp"

namespace gridlock {

namespace {

bool segments_cross(const Segment& h, const Segment& v, const Tolerances& tol) {
  return h.position >= v.lo - tol.join_tol && h.position <= v.hi + tol.join_tol &&
         v.position >= h.lo - tol.join_tol && v.position <= h.hi + tol.join_tol;
}

Rect segment_hull(const PageGraphics& page, const std::vector<std::size_t>& members) {
  Rect r{1e18, 1e18, -1e18, -1e18};
  for (std::size_t i : members) {
    const Segment& s = page.segments[i];
    if (s.orientation == Orientation::Horizontal) {
      r.x0 = std::min(r.x0, s.lo);
      r.x1 = std::max(r.x1, s.hi);
      r.y0 = std::min(r.y0, s.position);
      r.y1 = std::max(r.y1, s.position);
    } else {
      r.y0 = std::min(r.y0, s.lo);
      r.y1 = std::max(r.y1, s.hi);
      r.x0 = std::min(r.x0, s.position);
      r.x1 = std::max(r.x1, s.position);
    }
  }
  return r;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Wireless detection: spans outside wired regions that line up in at least a
// 2x2 grid of left-edge columns and baseline rows.
std::vector<TableRegion> detect_wireless(const PageGraphics& page,
                                         const std::vector<TableRegion>& wired,
                                         const Tolerances& tol) {
  std::vector<const TextSpan*> free_spans;
  for (const TextSpan& ts : page.text_spans) {
    Point c{ts.bbox.cx(), ts.bbox.cy()};
    bool inside = false;
    for (const TableRegion& r : wired)
      if (r.bbox.contains(c)) { inside = true; break; }
    if (!inside) free_spans.push_back(&ts);
  }
  if (free_spans.size() < 4) return {};

  std::vector<double> xs, ys;
  for (const TextSpan* ts : free_spans) {
    xs.push_back(ts->bbox.x0);
    ys.push_back(ts->bbox.cy());
  }
  double align_tol = tol.line_snap_tol * 2;
  auto col_clusters = snap_1d(xs, align_tol);
  auto row_clusters = snap_1d(ys, align_tol);

  // Keep columns/rows with >= 2 members; require a 2x2 occupancy.
  std::vector<int> col_of(free_spans.size(), -1), row_of(free_spans.size(), -1);
  int ncols = 0, nrows = 0;
  for (const auto& c : col_clusters) {
    if (c.members.size() < 2) continue;
    for (std::size_t m : c.members) col_of[m] = ncols;
    ++ncols;
  }
  for (const auto& c : row_clusters) {
    if (c.members.size() < 2) continue;
    for (std::size_t m : c.members) row_of[m] = nrows;
    ++nrows;
  }
  if (ncols < 2 || nrows < 2) return {};

  Rect hull{1e18, 1e18, -1e18, -1e18};
  std::size_t grid_members = 0;
  for (std::size_t i = 0; i < free_spans.size(); ++i) {
    if (col_of[i] < 0 || row_of[i] < 0) continue;
    ++grid_members;
    hull.x0 = std::min(hull.x0, free_spans[i]->bbox.x0);
    hull.y0 = std::min(hull.y0, free_spans[i]->bbox.y0);
    hull.x1 = std::max(hull.x1, free_spans[i]->bbox.x1);
    hull.y1 = std::max(hull.y1, free_spans[i]->bbox.y1);
  }
  if (grid_members < 4) return {};
  TableRegion region;
  region.bbox = hull;
  region.kind = RegionKind::Wireless;
  return {region};
}

}  // namespace

std::vector<TableRegion> detect_regions(const PageGraphics& page,
                                        const Tolerances& tol) {
  std::vector<std::size_t> h_idx, v_idx;
  for (std::size_t i = 0; i < page.segments.size(); ++i) {
    (page.segments[i].orientation == Orientation::Horizontal ? h_idx : v_idx)
        .push_back(i);
  }

  DisjointSet ds(page.segments.size());
  // Intersection counts per root are tallied after union.
  std::vector<std::pair<std::size_t, std::size_t>> crossings;
  for (std::size_t hi : h_idx) {
    for (std::size_t vi : v_idx) {
      if (segments_cross(page.segments[hi], page.segments[vi], tol)) {
        ds.unite(hi, vi);
        crossings.push_back({hi, vi});
      }
    }
  }

  struct Group {
    std::vector<std::size_t> members;
    std::size_t n_h = 0, n_v = 0, n_cross = 0;
  };
  std::vector<Group> groups(page.segments.size());
  for (std::size_t i = 0; i < page.segments.size(); ++i) {
    Group& g = groups[ds.find(i)];
    g.members.push_back(i);
    (page.segments[i].orientation == Orientation::Horizontal ? g.n_h : g.n_v)++;
  }
  for (const auto& [hi, vi] : crossings) groups[ds.find(hi)].n_cross++;

  std::vector<TableRegion> wired;
  for (const Group& g : groups) {
    if (g.n_h < 2 || g.n_v < 2 || g.n_cross < 4) continue;
    TableRegion region;
    region.kind = RegionKind::Wired;
    region.bbox = segment_hull(page, g.members);
    for (std::size_t i : g.members) {
      (page.segments[i].orientation == Orientation::Horizontal
           ? region.h_segments
           : region.v_segments)
          .push_back(i);
    }
    wired.push_back(std::move(region));
  }

  // Merge regions whose hulls overlap; each pass can create new overlaps.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < wired.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < wired.size(); ++j) {
        if (rect_iou(wired[i].bbox, wired[j].bbox) > 0) {
          wired[i].h_segments.insert(wired[i].h_segments.end(),
                                     wired[j].h_segments.begin(),
                                     wired[j].h_segments.end());
          wired[i].v_segments.insert(wired[i].v_segments.end(),
                                     wired[j].v_segments.begin(),
                                     wired[j].v_segments.end());
          std::vector<std::size_t> all = wired[i].h_segments;
          all.insert(all.end(), wired[i].v_segments.begin(), wired[i].v_segments.end());
          wired[i].bbox = segment_hull(page, all);
          wired.erase(wired.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<TableRegion> out = wired;
  auto wireless = detect_wireless(page, wired, tol);
  out.insert(out.end(), wireless.begin(), wireless.end());
  std::sort(out.begin(), out.end(), [](const TableRegion& a, const TableRegion& b) {
    if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
    return a.bbox.x0 < b.bbox.x0;
  });
  return out;
}

}  // namespace gridlock
