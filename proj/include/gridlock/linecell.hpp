#pragma once

#include <string>
#include <vector>

#include "gridlock/geometry.hpp"
#include "gridlock/page_model.hpp"
#include "gridlock/table_region.hpp"

namespace gridlock {

// Lattice boundaries: row_bounds are the y coordinates of horizontal rules,
// col_bounds the x coordinates of vertical rules, both strictly ascending.
struct Grid {
  std::vector<double> row_bounds;
  std::vector<double> col_bounds;

  int n_rows() const { return static_cast<int>(row_bounds.size()) - 1; }
  int n_cols() const { return static_cast<int>(col_bounds.size()) - 1; }
};

// Which lattice edges are backed by a physical rule.
// h_edges[i][j]: horizontal boundary i over column unit j.
// v_edges[i][j]: vertical boundary j over row unit i.
struct EdgePresence {
  std::vector<std::vector<bool>> h_edges;  // [row_bounds][n_cols]
  std::vector<std::vector<bool>> v_edges;  // [n_rows][col_bounds]
  std::vector<std::string> warnings;
};

struct LogicalCell {
  int row = 0;
  int col = 0;
  int rowspan = 1;
  int colspan = 1;
  Rect bbox;
  std::string text;
};

inline bool operator==(const LogicalCell& a, const LogicalCell& b) {
  return a.row == b.row && a.col == b.col && a.rowspan == b.rowspan &&
         a.colspan == b.colspan && a.bbox == b.bbox && a.text == b.text;
}

struct TableStructure {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<LogicalCell> cells;  // sorted by (row, col); exact partition
  Rect region_bbox;
  std::vector<std::string> warnings;
};

// Snap rule positions into lattice boundaries, dropping boundaries backed by
// at most one intersection. Throws DegenerateRegionError when fewer than two
// boundaries survive on either axis.
Grid build_grid(const TableRegion& region, const PageGraphics& page,
                const Tolerances& tol);

// An edge is present when a rule within line_snap_tol of the boundary covers
// at least edge_cover_ratio of the unit interval. Outer border edges are
// forced present (warned when synthesized).
EdgePresence compute_edges(const Grid& grid, const TableRegion& region,
                           const PageGraphics& page, const Tolerances& tol);

// Greedy row-major span merge over absent edges, with rectangularity repair.
TableStructure merge_spans(const Grid& grid, const EdgePresence& edges);

// build_grid -> compute_edges -> merge_spans.
TableStructure extract_table(const TableRegion& region, const PageGraphics& page,
                             const Tolerances& tol);

}  // namespace gridlock
