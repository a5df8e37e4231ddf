#pragma once

#include <string>
#include <vector>

#include "gridlock/geometry.hpp"
#include "gridlock/linecell.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

struct Paragraph {
  Rect bbox;
  std::string text;
  int line_count = 0;
};

// Divide a span at the given x cuts, choosing the nearest character boundary
// per cut (char_advances when present, else uniform widths; ties go to the
// later boundary). Children tile the parent and concatenate to its text.
// Cuts outside the bbox are ignored.
std::vector<TextSpan> split_span(const TextSpan& span,
                                 const std::vector<double>& cut_xs);

// Fill LogicalCell.text: spans straddling column boundaries are split, each
// piece lands in the cell containing its center, pieces inside a cell are
// ordered by (y, x) and joined with spaces (newline across large vertical
// gaps). Appends a warning per span that had to be attached to the nearest
// cell.
void assign_spans(TableStructure& table, const std::vector<TextSpan>& spans,
                  const Tolerances& tol);

// Cluster free spans into lines, then lines into paragraphs, in reading
// order.
std::vector<Paragraph> merge_paragraphs(const std::vector<TextSpan>& spans);

}  // namespace gridlock
