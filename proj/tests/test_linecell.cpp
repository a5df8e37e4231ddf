#include <doctest.h>

#include <random>

#include "gridlock/errors.hpp"
#include "gridlock/linecell.hpp"
#include "gridlock/synth.hpp"
#include "gridlock/table_region.hpp"
#include "helpers.hpp"

using namespace gridlock;

namespace {

// A page holding a full lattice with the given boundary coordinates.
PageGraphics lattice_page(const std::vector<double>& ys, const std::vector<double>& xs) {
  PageGraphics p;
  p.width = xs.back() + 50;
  p.height = ys.back() + 50;
  for (double y : ys) p.segments.push_back({Orientation::Horizontal, y, xs.front(), xs.back()});
  for (double x : xs) p.segments.push_back({Orientation::Vertical, x, ys.front(), ys.back()});
  return p;
}

TableRegion whole_page_region(const PageGraphics& p) {
  auto regions = detect_regions(p, {});
  REQUIRE(regions.size() == 1);
  return regions[0];
}

EdgePresence full_edges(int rows, int cols) {
  EdgePresence e;
  e.h_edges.assign(static_cast<std::size_t>(rows) + 1,
                   std::vector<bool>(static_cast<std::size_t>(cols), true));
  e.v_edges.assign(static_cast<std::size_t>(rows),
                   std::vector<bool>(static_cast<std::size_t>(cols) + 1, true));
  return e;
}

Grid unit_grid(int rows, int cols) {
  Grid g;
  for (int i = 0; i <= rows; ++i) g.row_bounds.push_back(10.0 * i);
  for (int j = 0; j <= cols; ++j) g.col_bounds.push_back(10.0 * j);
  return g;
}

}  // namespace

TEST_CASE("build_grid snaps jittered rule positions") {
  PageGraphics p = lattice_page({50, 100, 150}, {20, 120, 220});
  // Jitter one horizontal rule within snap tolerance.
  for (Segment& s : p.segments)
    if (s.orientation == Orientation::Horizontal && s.position == 100) s.position = 101.0;
  Grid g = build_grid(whole_page_region(p), p, {});
  REQUIRE(g.n_rows() == 2);
  REQUIRE(g.n_cols() == 2);
  CHECK(g.row_bounds[1] == doctest::Approx(101.0));
}

TEST_CASE("build_grid drops boundaries with single-point support") {
  PageGraphics p = lattice_page({50, 100, 150}, {20, 120, 220});
  // A stray vertical rule crossing only one horizontal line.
  p.segments.push_back({Orientation::Vertical, 70, 145, 165});
  Grid g = build_grid(whole_page_region(p), p, {});
  CHECK(g.n_cols() == 2);  // stray boundary at x=70 dropped
}

TEST_CASE("build_grid throws on degenerate lattices") {
  PageGraphics p;
  p.width = p.height = 300;
  p.segments.push_back({Orientation::Horizontal, 50, 0, 200});
  p.segments.push_back({Orientation::Horizontal, 100, 0, 200});
  p.segments.push_back({Orientation::Vertical, 0, 40, 110});
  p.segments.push_back({Orientation::Vertical, 200, 40, 110});
  TableRegion region;
  region.bbox = Rect{0, 50, 200, 100};
  region.h_segments = {0, 1};
  region.v_segments = {2, 3};
  // Degrade: drop one axis entirely.
  TableRegion no_h = region;
  no_h.h_segments.clear();
  CHECK_THROWS_AS(build_grid(no_h, p, {}), DegenerateRegionError);
}

TEST_CASE("compute_edges marks covered edges and synthesizes outer borders") {
  PageGraphics p = lattice_page({50, 100, 150}, {20, 120, 220});
  // Remove the interior vertical rule over the top row: v edge absent there.
  for (Segment& s : p.segments)
    if (s.orientation == Orientation::Vertical && s.position == 120) s.lo = 100;
  TableRegion region = whole_page_region(p);
  Grid g = build_grid(region, p, {});
  EdgePresence e = compute_edges(g, region, p, {});
  CHECK_FALSE(e.v_edges[0][1]);  // interior boundary, top row: not covered
  CHECK(e.v_edges[1][1]);        // bottom row still covered
  CHECK(e.v_edges[0][0]);        // outer borders always present
  CHECK(e.v_edges[0][2]);
  CHECK(e.h_edges[0][0]);
  CHECK(e.h_edges[2][1]);
}

TEST_CASE("compute_edges warns when an outer border had to be synthesized") {
  PageGraphics p = lattice_page({50, 100, 150}, {20, 120, 220});
  // Cut away half of the top border rule: coverage of unit (0,1) drops.
  for (Segment& s : p.segments)
    if (s.orientation == Orientation::Horizontal && s.position == 50) s.hi = 130;
  TableRegion region = whole_page_region(p);
  Grid g = build_grid(region, p, {});
  EdgePresence e = compute_edges(g, region, p, {});
  CHECK(e.h_edges[0][1]);  // forced present anyway
  REQUIRE_FALSE(e.warnings.empty());
  CHECK(e.warnings[0].find("outer border") != std::string::npos);
}

TEST_CASE("edge_cover_ratio governs edge presence") {
  PageGraphics p = lattice_page({50, 100, 150}, {20, 120, 220});
  // Interior horizontal rule covering 70% of the right unit only.
  for (Segment& s : p.segments)
    if (s.orientation == Orientation::Horizontal && s.position == 100) s.hi = 190;
  TableRegion region = whole_page_region(p);
  Grid g = build_grid(region, p, {});
  EdgePresence strict = compute_edges(g, region, p, {});
  CHECK_FALSE(strict.h_edges[1][1]);
  Tolerances loose;
  loose.edge_cover_ratio = 0.6;
  EdgePresence ok = compute_edges(g, region, p, loose);
  CHECK(ok.h_edges[1][1]);
}

TEST_CASE("merge_spans merges over absent edges") {
  Grid g = unit_grid(2, 2);
  EdgePresence e = full_edges(2, 2);
  e.v_edges[0][1] = false;  // top two units share a missing boundary
  TableStructure t = merge_spans(g, e);
  REQUIRE(t.cells.size() == 3);
  CHECK(t.cells[0].colspan == 2);
  CHECK(t.cells[0].rowspan == 1);
  CHECK(t.cells[0].bbox == Rect{0, 0, 20, 10});
  CHECK(t.warnings.empty());

  EdgePresence e2 = full_edges(2, 2);
  e2.h_edges[1][0] = false;  // left column vertical merge
  TableStructure t2 = merge_spans(g, e2);
  REQUIRE(t2.cells.size() == 3);
  CHECK(t2.cells[0].rowspan == 2);
}

TEST_CASE("merge_spans repairs non-rectangular unions with a warning") {
  // L-shape: missing right edge on top row and bottom edge on left column.
  Grid g = unit_grid(2, 2);
  EdgePresence e = full_edges(2, 2);
  e.v_edges[0][1] = false;
  e.h_edges[1][0] = false;
  TableStructure t = merge_spans(g, e);
  // Still a partition of all four units.
  int units = 0;
  for (const LogicalCell& c : t.cells) units += c.rowspan * c.colspan;
  CHECK(units == 4);
  REQUIRE_FALSE(t.warnings.empty());
  CHECK(t.warnings[0].find("non-rectangular") != std::string::npos);
}

TEST_CASE("merge_spans partitions 1000 random lattices up to 6x6") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 1000; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    Grid g = unit_grid(rows, cols);
    EdgePresence e = full_edges(rows, cols);
    for (int i = 1; i < rows; ++i)
      for (int j = 0; j < cols; ++j) e.h_edges[i][j] = rng() % 2;
    for (int i = 0; i < rows; ++i)
      for (int j = 1; j < cols; ++j) e.v_edges[i][j] = rng() % 2;
    TableStructure t = merge_spans(g, e);

    std::vector<int> covered(static_cast<std::size_t>(rows * cols), 0);
    for (const LogicalCell& c : t.cells)
      for (int r = c.row; r < c.row + c.rowspan; ++r)
        for (int cc = c.col; cc < c.col + c.colspan; ++cc)
          ++covered[static_cast<std::size_t>(r * cols + cc)];
    for (int v : covered) REQUIRE(v == 1);
  }
}

TEST_CASE("merge_spans agrees with the component oracle on all 2x3 edge subsets") {
  // 7 interior edges on a 2x3 lattice: 3 h under the top row, 2+2 interior v.
  const int rows = 2, cols = 3;
  Grid g = unit_grid(rows, cols);
  for (int mask = 0; mask < (1 << 7); ++mask) {
    EdgePresence e = full_edges(rows, cols);
    int bit = 0;
    for (int j = 0; j < cols; ++j) e.h_edges[1][j] = mask >> bit++ & 1;
    for (int i = 0; i < rows; ++i)
      for (int j = 1; j < cols; ++j) e.v_edges[i][j] = mask >> bit++ & 1;
    TableStructure t = merge_spans(g, e);

    auto components = testutil::edge_components(g, e);
    bool all_match = true;
    for (const auto& comp : components) {
      // Find the cell whose unit set equals this component.
      bool found = false;
      for (const LogicalCell& c : t.cells) {
        std::vector<int> units;
        for (int r = c.row; r < c.row + c.rowspan; ++r)
          for (int cc = c.col; cc < c.col + c.colspan; ++cc)
            units.push_back(r * cols + cc);
        std::vector<int> sorted_comp = comp;
        std::sort(sorted_comp.begin(), sorted_comp.end());
        std::sort(units.begin(), units.end());
        if (units == sorted_comp) {
          found = true;
          break;
        }
      }
      if (!found) all_match = false;
    }
    // Either an exact region-for-region match, or the lattice needed repair
    // and says so.
    if (!all_match) {
      REQUIRE_FALSE(t.warnings.empty());
    } else {
      CHECK(t.cells.size() == components.size());
    }
  }
}

TEST_CASE("extract_table equals synth ground truth on merged grids") {
  for (std::uint64_t seed : {0ULL, 7ULL, 19ULL, 104ULL}) {
    SynthParams sp;
    sp.seed = seed;
    sp.text_fill = false;
    SynthItem item = gen_table(sp);
    auto regions = detect_regions(item.page, {});
    REQUIRE(regions.size() == 1);
    TableStructure got = extract_table(regions[0], item.page, {});
    CHECK(testutil::same_structure(got, item.ground_truth));
  }
}

TEST_CASE("extract_table is deterministic") {
  SynthParams sp;
  sp.seed = 33;
  SynthItem item = gen_table(sp);
  auto regions = detect_regions(item.page, {});
  REQUIRE(regions.size() == 1);
  TableStructure a = extract_table(regions[0], item.page, {});
  TableStructure b = extract_table(regions[0], item.page, {});
  CHECK(a.cells == b.cells);
  CHECK(a.n_rows == b.n_rows);
  CHECK(a.n_cols == b.n_cols);
}
