#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gridlock/geometry.hpp"
#include "gridlock/linecell.hpp"
#include "gridlock/table_region.hpp"
#include "gridlock/text_match.hpp"

namespace gridlock {

enum class CellKind { Text, Table, Image };

// Unified per-page output element: a text paragraph, a table, or an image
// region reference.
struct PdfCell {
  CellKind kind = CellKind::Text;
  Rect bbox;
  std::variant<Paragraph, TableStructure, std::string> content;
};

struct PageOutput {
  int page_index = 0;
  std::vector<PdfCell> cells;  // sorted by (y0, x0)
  std::vector<std::string> warnings;
};

struct DocumentOutput {
  std::vector<PageOutput> pages;  // ascending unique page indices
};

// HTML5 table fragment: tr/td rows in lattice order, span attributes only
// when > 1, text escaped, newlines as <br/>. Deterministic bytes.
std::string table_to_html(const TableStructure& t);

// RFC-4180 CSV: spanning cells at their top-left unit, covered units empty,
// CRLF line endings.
std::string table_to_csv(const TableStructure& t);

// Wireless regions are emitted as flagged, unparsed tables.
struct WirelessFlag {
  Rect bbox;
};

// Wrap page items as PdfCells in reading order. Paragraphs overlapping a
// table bbox are dropped (their text already lives in cells); each drop adds
// a warning.
std::vector<PdfCell> page_to_cells(const std::vector<TableStructure>& tables,
                                   const std::vector<Paragraph>& paragraphs,
                                   const std::vector<Rect>& image_regions,
                                   std::vector<std::string>& warnings);

// Versioned JSON of the whole document, deterministic.
std::string document_to_json(const DocumentOutput& doc);

}  // namespace gridlock
