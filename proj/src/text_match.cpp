#include "gridlock/text_match.hpp"

#include <algorithm>
#include <cmath>

namespace gridlock {

namespace {

// Byte offsets of each code point boundary, n+1 entries.
std::vector<std::size_t> utf8_offsets(const std::string& s) {
  std::vector<std::size_t> offs;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) offs.push_back(i);
  }
  offs.push_back(s.size());
  return offs;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

std::vector<TextSpan> split_span(const TextSpan& span,
                                 const std::vector<double>& cut_xs) {
  auto offs = utf8_offsets(span.text);
  std::size_t n = offs.size() - 1;
  if (n < 2 || cut_xs.empty()) return {span};

  // Character boundary x positions b_0..b_n.
  std::vector<double> bounds(n + 1);
  bounds[0] = span.bbox.x0;
  if (span.char_advances) {
    for (std::size_t i = 0; i < n; ++i) bounds[i + 1] = bounds[i] + (*span.char_advances)[i];
    bounds[n] = span.bbox.x1;
  } else {
    double cw = span.bbox.width() / static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i) bounds[i] = span.bbox.x0 + cw * static_cast<double>(i);
  }

  std::vector<std::size_t> splits;
  for (double cut : cut_xs) {
    if (cut <= span.bbox.x0 || cut >= span.bbox.x1) continue;
    std::size_t best = 1;
    double best_d = std::abs(bounds[1] - cut);
    for (std::size_t i = 2; i < n; ++i) {
      double d = std::abs(bounds[i] - cut);
      if (d <= best_d) {  // ties go to the later boundary
        best_d = d;
        best = i;
      }
    }
    splits.push_back(best);
  }
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  if (splits.empty()) return {span};

  std::vector<TextSpan> out;
  std::size_t start = 0;
  splits.push_back(n);
  for (std::size_t end : splits) {
    TextSpan child;
    child.text = span.text.substr(offs[start], offs[end] - offs[start]);
    child.bbox = Rect{bounds[start], span.bbox.y0, bounds[end], span.bbox.y1};
    if (span.char_advances)
      child.char_advances = std::vector<double>(
          span.char_advances->begin() + static_cast<std::ptrdiff_t>(start),
          span.char_advances->begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(std::move(child));
    start = end;
  }
  return out;
}

void assign_spans(TableStructure& table, const std::vector<TextSpan>& spans,
                  const Tolerances& tol) {
  // Interior column boundaries, reconstructed from cell bboxes.
  std::vector<double> boundaries;
  for (const LogicalCell& c : table.cells) {
    boundaries.push_back(c.bbox.x0);
    boundaries.push_back(c.bbox.x1);
  }
  std::sort(boundaries.begin(), boundaries.end());
  boundaries.erase(std::unique(boundaries.begin(), boundaries.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                   boundaries.end());
  if (boundaries.size() >= 2) {
    boundaries.erase(boundaries.begin());
    boundaries.pop_back();
  }

  struct Piece {
    TextSpan span;
    std::size_t cell;
  };
  std::vector<Piece> pieces;

  for (const TextSpan& span : spans) {
    double cw = span.bbox.width() /
                std::max<double>(1.0, static_cast<double>(utf8_length(span.text)));
    double margin = tol.overlap_frac * cw;
    std::vector<double> cuts;
    for (double b : boundaries)
      if (b > span.bbox.x0 + margin && b < span.bbox.x1 - margin) cuts.push_back(b);
    for (TextSpan& piece : split_span(span, cuts)) {
      Point center{piece.bbox.cx(), piece.bbox.cy()};
      std::size_t best = table.cells.size();
      for (std::size_t i = 0; i < table.cells.size(); ++i) {
        if (table.cells[i].bbox.contains(center)) { best = i; break; }
      }
      if (best == table.cells.size()) {
        double best_d = 1e18;
        for (std::size_t i = 0; i < table.cells.size(); ++i) {
          const Rect& b = table.cells[i].bbox;
          double d = std::hypot(center.x - b.cx(), center.y - b.cy());
          if (d < best_d) { best_d = d; best = i; }
        }
        table.warnings.push_back("span \"" + piece.text +
                                 "\" outside every cell; attached to nearest");
      }
      pieces.push_back({std::move(piece), best});
    }
  }

  for (std::size_t ci = 0; ci < table.cells.size(); ++ci) {
    std::vector<const TextSpan*> in_cell;
    std::vector<double> heights;
    for (const Piece& p : pieces) {
      if (p.cell == ci) {
        in_cell.push_back(&p.span);
        heights.push_back(p.span.bbox.height());
      }
    }
    if (in_cell.empty()) continue;
    std::sort(in_cell.begin(), in_cell.end(), [](const TextSpan* a, const TextSpan* b) {
      if (a->bbox.y0 != b->bbox.y0) return a->bbox.y0 < b->bbox.y0;
      return a->bbox.x0 < b->bbox.x0;
    });
    double nl_gap = 0.6 * median(heights);
    std::string text = in_cell.front()->text;
    for (std::size_t i = 1; i < in_cell.size(); ++i) {
      double gap = in_cell[i]->bbox.y0 - in_cell[i - 1]->bbox.y1;
      text += gap > nl_gap ? '\n' : ' ';
      text += in_cell[i]->text;
    }
    table.cells[ci].text = std::move(text);
  }
}

std::vector<Paragraph> merge_paragraphs(const std::vector<TextSpan>& spans) {
  if (spans.empty()) return {};
  std::vector<double> heights;
  for (const TextSpan& s : spans) heights.push_back(s.bbox.height());
  double med_h = median(heights);

  // Lines: single-linkage on y centers.
  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spans[a].bbox.cy() < spans[b].bbox.cy();
  });
  struct Line {
    Rect bbox;
    std::vector<std::size_t> members;
  };
  std::vector<Line> lines;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t i = order[k];
    if (!lines.empty() &&
        spans[i].bbox.cy() - spans[order[k - 1]].bbox.cy() <= 0.5 * med_h) {
      lines.back().members.push_back(i);
    } else {
      lines.push_back({spans[i].bbox, {i}});
    }
  }
  struct BuiltLine {
    Rect bbox;
    std::string text;
  };
  std::vector<BuiltLine> built;
  for (Line& line : lines) {
    std::sort(line.members.begin(), line.members.end(), [&](std::size_t a, std::size_t b) {
      return spans[a].bbox.x0 < spans[b].bbox.x0;
    });
    BuiltLine bl;
    bl.bbox = spans[line.members.front()].bbox;
    bl.text = spans[line.members.front()].text;
    for (std::size_t k = 1; k < line.members.size(); ++k) {
      const Rect& b = spans[line.members[k]].bbox;
      bl.bbox.x0 = std::min(bl.bbox.x0, b.x0);
      bl.bbox.y0 = std::min(bl.bbox.y0, b.y0);
      bl.bbox.x1 = std::max(bl.bbox.x1, b.x1);
      bl.bbox.y1 = std::max(bl.bbox.y1, b.y1);
      bl.text += ' ';
      bl.text += spans[line.members[k]].text;
    }
    built.push_back(std::move(bl));
  }
  std::sort(built.begin(), built.end(),
            [](const BuiltLine& a, const BuiltLine& b) { return a.bbox.y0 < b.bbox.y0; });

  std::vector<double> line_heights;
  for (const BuiltLine& l : built) line_heights.push_back(l.bbox.height());
  double med_lh = median(line_heights);

  auto x_overlap_ok = [](const Rect& a, const Rect& b) {
    double ov = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    double w = std::min(a.width(), b.width());
    return w > 0 && ov >= 0.5 * w;
  };

  std::vector<Paragraph> out;
  for (const BuiltLine& line : built) {
    bool merged = false;
    if (!out.empty()) {
      Paragraph& p = out.back();
      double gap = line.bbox.y0 - p.bbox.y1;
      if (gap <= 1.5 * med_lh && x_overlap_ok(p.bbox, line.bbox)) {
        p.text += ' ';
        p.text += line.text;
        p.bbox.x0 = std::min(p.bbox.x0, line.bbox.x0);
        p.bbox.y0 = std::min(p.bbox.y0, line.bbox.y0);
        p.bbox.x1 = std::max(p.bbox.x1, line.bbox.x1);
        p.bbox.y1 = std::max(p.bbox.y1, line.bbox.y1);
        p.line_count += 1;
        merged = true;
      }
    }
    if (!merged) out.push_back({line.bbox, line.text, 1});
  }
  return out;
}

}  // namespace gridlock
