#include "gridlock/linecell.hpp"

#include <algorithm>
#include <cmath>

#include "gridlock/errors.hpp"
#include "gridlock/raster_lines.hpp"

namespace gridlock {

namespace {

std::vector<Segment> region_segments(const TableRegion& region,
                                     const PageGraphics& page,
                                     Orientation o) {
  std::vector<Segment> out;
  const auto& idx = o == Orientation::Horizontal ? region.h_segments : region.v_segments;
  for (std::size_t i : idx) out.push_back(page.segments[i]);
  return out;
}

}  // namespace

Grid build_grid(const TableRegion& region, const PageGraphics& page,
                const Tolerances& tol) {
  auto h = region_segments(region, page, Orientation::Horizontal);
  auto v = region_segments(region, page, Orientation::Vertical);
  if (h.size() < 2 || v.size() < 2)
    throw DegenerateRegionError("build_grid: fewer than 2 rules on an axis");

  std::vector<double> h_pos, v_pos;
  for (const Segment& s : h) h_pos.push_back(s.position);
  for (const Segment& s : v) v_pos.push_back(s.position);
  auto row_clusters = snap_1d(h_pos, tol.line_snap_tol);
  auto col_clusters = snap_1d(v_pos, tol.line_snap_tol);

  auto points = find_intersections(h, v, tol);

  Grid grid;
  for (const Cluster1D& c : row_clusters) {
    int support = 0;
    for (const Point& p : points)
      if (std::abs(p.y - c.canonical) <= tol.line_snap_tol) ++support;
    if (support > 1) grid.row_bounds.push_back(c.canonical);
  }
  for (const Cluster1D& c : col_clusters) {
    int support = 0;
    for (const Point& p : points)
      if (std::abs(p.x - c.canonical) <= tol.line_snap_tol) ++support;
    if (support > 1) grid.col_bounds.push_back(c.canonical);
  }
  if (grid.row_bounds.size() < 2 || grid.col_bounds.size() < 2)
    throw DegenerateRegionError(
        "build_grid: fewer than 2 supported boundaries on an axis");
  return grid;
}

EdgePresence compute_edges(const Grid& grid, const TableRegion& region,
                           const PageGraphics& page, const Tolerances& tol) {
  auto h = region_segments(region, page, Orientation::Horizontal);
  auto v = region_segments(region, page, Orientation::Vertical);
  int R = static_cast<int>(grid.row_bounds.size());
  int C = static_cast<int>(grid.col_bounds.size());

  EdgePresence ep;
  ep.h_edges.assign(R, std::vector<bool>(C - 1, false));
  ep.v_edges.assign(R - 1, std::vector<bool>(C, false));

  auto covered = [&](const std::vector<Segment>& segs, double boundary,
                     double lo, double hi) {
    for (const Segment& s : segs) {
      if (std::abs(s.position - boundary) > tol.line_snap_tol) continue;
      double overlap = std::min(s.hi, hi) - std::max(s.lo, lo);
      if (overlap >= tol.edge_cover_ratio * (hi - lo)) return true;
    }
    return false;
  };

  for (int i = 0; i < R; ++i)
    for (int j = 0; j + 1 < C; ++j)
      ep.h_edges[i][j] =
          covered(h, grid.row_bounds[i], grid.col_bounds[j], grid.col_bounds[j + 1]);
  for (int i = 0; i + 1 < R; ++i)
    for (int j = 0; j < C; ++j)
      ep.v_edges[i][j] =
          covered(v, grid.col_bounds[j], grid.row_bounds[i], grid.row_bounds[i + 1]);

  // Tables are closed: synthesize missing outer border edges.
  int synthesized = 0;
  for (int j = 0; j + 1 < C; ++j) {
    if (!ep.h_edges[0][j]) { ep.h_edges[0][j] = true; ++synthesized; }
    if (!ep.h_edges[R - 1][j]) { ep.h_edges[R - 1][j] = true; ++synthesized; }
  }
  for (int i = 0; i + 1 < R; ++i) {
    if (!ep.v_edges[i][0]) { ep.v_edges[i][0] = true; ++synthesized; }
    if (!ep.v_edges[i][C - 1]) { ep.v_edges[i][C - 1] = true; ++synthesized; }
  }
  if (synthesized > 0)
    ep.warnings.push_back("synthesized " + std::to_string(synthesized) +
                          " missing outer border edge(s)");
  return ep;
}

TableStructure merge_spans(const Grid& grid, const EdgePresence& edges) {
  int nr = grid.n_rows();
  int nc = grid.n_cols();
  TableStructure out;
  out.n_rows = nr;
  out.n_cols = nc;
  out.region_bbox = Rect{grid.col_bounds.front(), grid.row_bounds.front(),
                         grid.col_bounds.back(), grid.row_bounds.back()};
  out.warnings = edges.warnings;

  std::vector<std::vector<bool>> assigned(nr, std::vector<bool>(nc, false));
  std::vector<std::vector<int>> owner(nr, std::vector<int>(nc, -1));

  // True when every interior edge of the rectangle [r,r+m) x [c,c+k) is absent.
  auto rectangle_clear = [&](int r, int c, int m, int k) {
    for (int i = r; i < r + m; ++i)
      for (int b = c + 1; b < c + k; ++b)
        if (edges.v_edges[i][b]) return false;
    for (int b = r + 1; b < r + m; ++b)
      for (int j = c; j < c + k; ++j)
        if (edges.h_edges[b][j]) return false;
    return true;
  };

  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      if (assigned[r][c]) continue;
      int colspan = 1;
      while (c + colspan < nc && !edges.v_edges[r][c + colspan] &&
             !assigned[r][c + colspan])
        ++colspan;
      int rowspan = 1;
      for (;;) {
        int next = r + rowspan;
        if (next >= nr) break;
        bool open = true;
        for (int j = c; j < c + colspan; ++j) {
          if (edges.h_edges[next][j] || assigned[next][j]) { open = false; break; }
        }
        if (!open) break;
        ++rowspan;
      }
      if (!rectangle_clear(r, c, rowspan, colspan)) {
        int m = rowspan;
        while (m > 1 && !rectangle_clear(r, c, m, colspan)) --m;
        rowspan = m;
      }
      LogicalCell cell;
      cell.row = r;
      cell.col = c;
      cell.rowspan = rowspan;
      cell.colspan = colspan;
      cell.bbox = Rect{grid.col_bounds[c], grid.row_bounds[r],
                       grid.col_bounds[c + colspan], grid.row_bounds[r + rowspan]};
      for (int i = r; i < r + rowspan; ++i)
        for (int j = c; j < c + colspan; ++j) {
          assigned[i][j] = true;
          owner[i][j] = static_cast<int>(out.cells.size());
        }
      out.cells.push_back(std::move(cell));
    }
  }
  // An absent interior edge between two different cells means a connected but
  // non-rectangular union was split into rectangles.
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      bool split = (c + 1 < nc && !edges.v_edges[r][c + 1] &&
                    owner[r][c] != owner[r][c + 1]) ||
                   (r + 1 < nr && !edges.h_edges[r + 1][c] &&
                    owner[r][c] != owner[r + 1][c]);
      if (split) {
        out.warnings.push_back("non-rectangular merge repaired at (" +
                               std::to_string(r) + "," + std::to_string(c) + ")");
        r = nr;
        break;
      }
    }
  return out;
}

TableStructure extract_table(const TableRegion& region, const PageGraphics& page,
                             const Tolerances& tol) {
  Grid grid = build_grid(region, page, tol);
  EdgePresence edges = compute_edges(grid, region, page, tol);
  return merge_spans(grid, edges);
}

}  // namespace gridlock
