#include "gridlock/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "gridlock/errors.hpp"
#include "gridlock/linecell.hpp"
#include "gridlock/raster_lines.hpp"
#include "gridlock/text_match.hpp"

namespace gridlock {

PageGraphics raster_to_graphics(const RasterPage& img, const Config& cfg,
                                bool do_deskew, SkewEstimate* est) {
  const RasterPage* src = &img;
  RasterPage corrected;
  BinaryImage bin = binarize(img, cfg.binarize_window, cfg.binarize_offset);
  if (do_deskew) {
    SkewEstimate e = estimate_skew(bin);
    if (est) *est = e;
    if (std::abs(e.angle_deg) > 0.05) {
      corrected = rotate_raster(img, -e.angle_deg);
      bin = binarize(corrected, cfg.binarize_window, cfg.binarize_offset);
      src = &corrected;
    }
  } else if (est) {
    *est = SkewEstimate{};
  }

  PageGraphics page;
  page.source_kind = SourceKind::Image;
  page.width = src->width_px * 72.0 / src->dpi;
  page.height = src->height_px * 72.0 / src->dpi;
  page.segments = extract_rule_segments(bin, src->dpi, cfg.min_len_frac, cfg.tol);
  return page;
}

PageOutput analyze_page(const PageGraphics& page, const Config& cfg) {
  PageOutput out;
  out.page_index = page.page_index;

  std::vector<TableRegion> regions = detect_regions(page, cfg.tol);
  std::vector<TableStructure> tables;
  std::vector<char> span_used(page.text_spans.size(), 0);

  for (const TableRegion& region : regions) {
    if (region.kind == RegionKind::Wireless) {
      std::ostringstream w;
      w << "wireless table candidate at (" << region.bbox.x0 << ", " << region.bbox.y0
        << ", " << region.bbox.x1 << ", " << region.bbox.y1 << ") left unparsed";
      out.warnings.push_back(w.str());
      continue;
    }
    TableStructure table;
    try {
      table = extract_table(region, page, cfg.tol);
    } catch (const DegenerateRegionError& e) {
      out.warnings.push_back(std::string("degenerate table region skipped: ") + e.what());
      continue;
    }
    if (page.source_kind == SourceKind::DigitalPdf) {
      Rect hit = region.bbox;
      hit.x0 -= cfg.tol.line_snap_tol;
      hit.y0 -= cfg.tol.line_snap_tol;
      hit.x1 += cfg.tol.line_snap_tol;
      hit.y1 += cfg.tol.line_snap_tol;
      std::vector<TextSpan> inside;
      for (std::size_t i = 0; i < page.text_spans.size(); ++i) {
        Point c{page.text_spans[i].bbox.cx(), page.text_spans[i].bbox.cy()};
        if (hit.contains(c)) {
          inside.push_back(page.text_spans[i]);
          span_used[i] = 1;
        }
      }
      assign_spans(table, inside, cfg.tol);
    }
    tables.push_back(std::move(table));
  }

  std::vector<TextSpan> free_spans;
  for (std::size_t i = 0; i < page.text_spans.size(); ++i)
    if (!span_used[i]) free_spans.push_back(page.text_spans[i]);
  std::vector<Paragraph> paragraphs = merge_paragraphs(free_spans);

  out.cells = page_to_cells(tables, paragraphs, {}, out.warnings);
  return out;
}

}  // namespace gridlock
