#include "gridlock/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gridlock/deskew.hpp"
#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

struct CellRect {
  int r0, c0, rs, cs;
};

constexpr double kMargin = 18.0;
constexpr double kCharWidth = 5.0;
constexpr double kCharHeight = 9.0;
constexpr double kTextInset = 3.0;

std::vector<double> random_bounds(SplitMix64& rng, int n_units, double lo_size,
                                  double hi_size) {
  std::vector<double> bounds;
  bounds.push_back(kMargin);
  for (int i = 0; i < n_units; ++i)
    bounds.push_back(bounds.back() + lo_size + (hi_size - lo_size) * rng.next_double());
  return bounds;
}

// Merge attempt: cells u and v fuse only when their union is a rectangle,
// i.e. they share a full side.
bool try_merge(std::vector<int>& owner, std::vector<CellRect>& cells, int rows,
               int cols, int r, int c, bool horizontal) {
  int a = owner[static_cast<std::size_t>(r) * cols + c];
  const CellRect& ca = cells[static_cast<std::size_t>(a)];
  int nr = horizontal ? ca.r0 : ca.r0 + ca.rs;
  int nc = horizontal ? ca.c0 + ca.cs : ca.c0;
  if (nr >= rows || nc >= cols) return false;
  int b = owner[static_cast<std::size_t>(nr) * cols + nc];
  if (b == a) return false;
  const CellRect& cb = cells[static_cast<std::size_t>(b)];
  if (horizontal) {
    if (cb.r0 != ca.r0 || cb.rs != ca.rs || cb.c0 != ca.c0 + ca.cs) return false;
  } else {
    if (cb.c0 != ca.c0 || cb.cs != ca.cs || cb.r0 != ca.r0 + ca.rs) return false;
  }
  CellRect old_a = ca;
  CellRect old_b = cb;
  CellRect merged = ca;
  if (horizontal)
    merged.cs += cb.cs;
  else
    merged.rs += cb.rs;
  cells[static_cast<std::size_t>(a)] = merged;
  for (int rr = merged.r0; rr < merged.r0 + merged.rs; ++rr)
    for (int cc = merged.c0; cc < merged.c0 + merged.cs; ++cc)
      owner[static_cast<std::size_t>(rr) * cols + cc] = a;

  // Reject merges that erase the crossed ruling line entirely: with no
  // remaining edge on that boundary the drawing could not witness it, and the
  // structure would be unrecoverable from the rules alone.
  bool witnessed = false;
  if (horizontal) {
    int k = old_a.c0 + old_a.cs;
    for (int rr = 0; rr < rows && !witnessed; ++rr)
      witnessed = owner[static_cast<std::size_t>(rr) * cols + (k - 1)] !=
                  owner[static_cast<std::size_t>(rr) * cols + k];
  } else {
    int k = old_a.r0 + old_a.rs;
    for (int cc = 0; cc < cols && !witnessed; ++cc)
      witnessed = owner[static_cast<std::size_t>(k - 1) * cols + cc] !=
                  owner[static_cast<std::size_t>(k) * cols + cc];
  }
  if (!witnessed) {
    cells[static_cast<std::size_t>(a)] = old_a;
    for (int rr = old_b.r0; rr < old_b.r0 + old_b.rs; ++rr)
      for (int cc = old_b.c0; cc < old_b.c0 + old_b.cs; ++cc)
        owner[static_cast<std::size_t>(rr) * cols + cc] = b;
    return false;
  }
  return true;
}

void draw_hline(RasterPage& img, int y, int x0, int x1) {
  if (y < 0 || y >= img.height_px) return;
  for (int x = std::max(0, x0); x <= std::min(img.width_px - 1, x1); ++x)
    img.at(x, y) = 0;
}

void draw_vline(RasterPage& img, int x, int y0, int y1) {
  if (x < 0 || x >= img.width_px) return;
  for (int y = std::max(0, y0); y <= std::min(img.height_px - 1, y1); ++y)
    img.at(x, y) = 0;
}

}  // namespace

SynthItem gen_table(const SynthParams& params) {
  if (params.max_rows < 2 || params.max_cols < 2)
    throw ConfigError("synth: max_rows and max_cols must be at least 2");
  if (params.merge_prob < 0 || params.merge_prob > 1)
    throw ConfigError("synth: merge_prob must lie in [0, 1]");
  if (params.dpi <= 0) throw ConfigError("synth: dpi must be positive");
  if (std::abs(params.skew_deg) > 45)
    throw ConfigError("synth: skew_deg must lie in [-45, 45]");
  if (params.noise_sigma < 0) throw ConfigError("synth: noise_sigma must be >= 0");

  SplitMix64 rng(params.seed);
  int rows = rng.next_int(2, params.max_rows);
  int cols = rng.next_int(2, params.max_cols);

  // Cell sizes stay well above the morphology kernel (4% of the page extent)
  // so raster extraction never erases a short interior rule.
  std::vector<double> row_bounds = random_bounds(rng, rows, 22.0, 40.0);
  std::vector<double> col_bounds = random_bounds(rng, cols, 22.0, 46.0);
  double page_w = col_bounds.back() + kMargin;
  double page_h = row_bounds.back() + kMargin;

  // Start from the full lattice; fuse random adjacent rectangles.
  std::vector<int> owner(static_cast<std::size_t>(rows) * cols);
  std::vector<CellRect> cells;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      owner[static_cast<std::size_t>(r) * cols + c] = static_cast<int>(cells.size());
      cells.push_back({r, c, 1, 1});
    }
  for (int attempt = 0; attempt < rows * cols; ++attempt) {
    if (rng.next_double() >= params.merge_prob) continue;
    int r = rng.next_int(0, rows - 1);
    int c = rng.next_int(0, cols - 1);
    bool horizontal = rng.next_int(0, 1) == 0;
    try_merge(owner, cells, rows, cols, r, c, horizontal);
  }

  // Surviving cells in reading order.
  std::vector<int> live;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (owner[static_cast<std::size_t>(cells[static_cast<std::size_t>(i)].r0) * cols +
              cells[static_cast<std::size_t>(i)].c0] == i)
      live.push_back(i);
  std::sort(live.begin(), live.end(), [&](int a, int b) {
    const CellRect& ca = cells[static_cast<std::size_t>(a)];
    const CellRect& cb = cells[static_cast<std::size_t>(b)];
    return ca.r0 != cb.r0 ? ca.r0 < cb.r0 : ca.c0 < cb.c0;
  });

  SynthItem item;
  TableStructure& gt = item.ground_truth;
  gt.n_rows = rows;
  gt.n_cols = cols;
  gt.region_bbox = Rect{col_bounds.front(), row_bounds.front(), col_bounds.back(),
                        row_bounds.back()};

  PageGraphics& page = item.page;
  page.page_index = 0;
  page.width = page_w;
  page.height = page_h;
  page.source_kind = SourceKind::DigitalPdf;

  static const char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  for (int idx : live) {
    const CellRect& cr = cells[static_cast<std::size_t>(idx)];
    LogicalCell cell;
    cell.row = cr.r0;
    cell.col = cr.c0;
    cell.rowspan = cr.rs;
    cell.colspan = cr.cs;
    cell.bbox = Rect{col_bounds[static_cast<std::size_t>(cr.c0)],
                     row_bounds[static_cast<std::size_t>(cr.r0)],
                     col_bounds[static_cast<std::size_t>(cr.c0 + cr.cs)],
                     row_bounds[static_cast<std::size_t>(cr.r0 + cr.rs)]};
    if (params.text_fill) {
      int len = rng.next_int(2, 3);
      std::string text;
      for (int i = 0; i < len; ++i)
        text += kAlphabet[rng.next_int(0, static_cast<int>(sizeof(kAlphabet)) - 2)];
      cell.text = text;
      TextSpan span;
      double cy = 0.5 * (cell.bbox.y0 + cell.bbox.y1);
      span.bbox = Rect{cell.bbox.x0 + kTextInset, cy - 0.5 * kCharHeight,
                       cell.bbox.x0 + kTextInset + kCharWidth * len,
                       cy + 0.5 * kCharHeight};
      span.text = text;
      span.char_advances = std::vector<double>(static_cast<std::size_t>(len), kCharWidth);
      page.text_spans.push_back(std::move(span));
    }
    gt.cells.push_back(std::move(cell));
  }

  // Rules as maximal runs of present lattice edges.
  for (int i = 0; i <= rows; ++i) {
    int j = 0;
    while (j < cols) {
      bool present = i == 0 || i == rows ||
                     owner[static_cast<std::size_t>(i - 1) * cols + j] !=
                         owner[static_cast<std::size_t>(i) * cols + j];
      if (!present) {
        ++j;
        continue;
      }
      int j0 = j;
      while (j < cols &&
             (i == 0 || i == rows ||
              owner[static_cast<std::size_t>(i - 1) * cols + j] !=
                  owner[static_cast<std::size_t>(i) * cols + j]))
        ++j;
      page.segments.push_back(Segment{Orientation::Horizontal,
                                      row_bounds[static_cast<std::size_t>(i)],
                                      col_bounds[static_cast<std::size_t>(j0)],
                                      col_bounds[static_cast<std::size_t>(j)]});
    }
  }
  for (int j = 0; j <= cols; ++j) {
    int i = 0;
    while (i < rows) {
      bool present = j == 0 || j == cols ||
                     owner[static_cast<std::size_t>(i) * cols + (j - 1)] !=
                         owner[static_cast<std::size_t>(i) * cols + j];
      if (!present) {
        ++i;
        continue;
      }
      int i0 = i;
      while (i < rows &&
             (j == 0 || j == cols ||
              owner[static_cast<std::size_t>(i) * cols + (j - 1)] !=
                  owner[static_cast<std::size_t>(i) * cols + j]))
        ++i;
      page.segments.push_back(Segment{Orientation::Vertical,
                                      col_bounds[static_cast<std::size_t>(j)],
                                      row_bounds[static_cast<std::size_t>(i0)],
                                      row_bounds[static_cast<std::size_t>(i)]});
    }
  }
  std::sort(page.segments.begin(), page.segments.end(),
            [](const Segment& a, const Segment& b) {
              if (a.orientation != b.orientation)
                return a.orientation < b.orientation;
              if (a.position != b.position) return a.position < b.position;
              return a.lo < b.lo;
            });

  // Rule-only raster render, one pixel wide.
  double scale = params.dpi / 72.0;
  RasterPage img;
  img.dpi = params.dpi;
  img.width_px = static_cast<int>(std::lround(page_w * scale));
  img.height_px = static_cast<int>(std::lround(page_h * scale));
  img.pixels.assign(static_cast<std::size_t>(img.width_px) * img.height_px, 255);
  for (const Segment& s : page.segments) {
    int pos = static_cast<int>(std::lround(s.position * scale));
    int lo = static_cast<int>(std::lround(s.lo * scale));
    int hi = static_cast<int>(std::lround(s.hi * scale));
    if (s.orientation == Orientation::Horizontal)
      draw_hline(img, pos, lo, hi);
    else
      draw_vline(img, pos, lo, hi);
  }

  if (params.skew_deg != 0) img = rotate_raster(img, params.skew_deg);

  if (params.noise_sigma > 0) {
    constexpr double kTwoPi = 6.283185307179586;
    for (std::size_t i = 0; i + 1 < img.pixels.size(); i += 2) {
      double u1 = rng.next_double();
      double u2 = rng.next_double();
      if (u1 < 1e-300) u1 = 1e-300;
      double mag = params.noise_sigma * std::sqrt(-2.0 * std::log(u1));
      double n0 = mag * std::cos(kTwoPi * u2);
      double n1 = mag * std::sin(kTwoPi * u2);
      img.pixels[i] = static_cast<std::uint8_t>(
          std::clamp(img.pixels[i] + n0, 0.0, 255.0));
      img.pixels[i + 1] = static_cast<std::uint8_t>(
          std::clamp(img.pixels[i + 1] + n1, 0.0, 255.0));
    }
  }
  item.raster = std::move(img);
  return item;
}

}  // namespace gridlock
