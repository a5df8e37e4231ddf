#include "gridlock/emit.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace gridlock {

using json = nlohmann::ordered_json;

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "<br/>"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

json rect_json(const Rect& r) {
  return json::array({round3(r.x0), round3(r.y0), round3(r.x1), round3(r.y1)});
}

}  // namespace

std::string table_to_html(const TableStructure& t) {
  // Cells are sorted by (row, col); group by top row.
  std::string out = "<table>";
  std::size_t i = 0;
  for (int r = 0; r < t.n_rows; ++r) {
    out += "<tr>";
    while (i < t.cells.size() && t.cells[i].row == r) {
      const LogicalCell& c = t.cells[i];
      out += "<td";
      if (c.rowspan > 1) out += " rowspan=\"" + std::to_string(c.rowspan) + "\"";
      if (c.colspan > 1) out += " colspan=\"" + std::to_string(c.colspan) + "\"";
      out += ">";
      out += html_escape(c.text);
      out += "</td>";
      ++i;
    }
    out += "</tr>";
  }
  out += "</table>";
  return out;
}

std::string table_to_csv(const TableStructure& t) {
  std::vector<std::vector<std::string>> grid(
      static_cast<std::size_t>(t.n_rows),
      std::vector<std::string>(static_cast<std::size_t>(t.n_cols)));
  for (const LogicalCell& c : t.cells)
    grid[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)] = c.text;
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_field(row[j]);
    }
    out += "\r\n";
  }
  return out;
}

std::vector<PdfCell> page_to_cells(const std::vector<TableStructure>& tables,
                                   const std::vector<Paragraph>& paragraphs,
                                   const std::vector<Rect>& image_regions,
                                   std::vector<std::string>& warnings) {
  std::vector<PdfCell> out;
  for (const TableStructure& t : tables) {
    PdfCell c;
    c.kind = CellKind::Table;
    c.bbox = t.region_bbox;
    c.content = t;
    out.push_back(std::move(c));
  }
  for (const Paragraph& p : paragraphs) {
    bool inside_table = false;
    for (const TableStructure& t : tables) {
      if (rect_iou(p.bbox, t.region_bbox) > 0 ||
          (p.bbox.x0 >= t.region_bbox.x0 && p.bbox.x1 <= t.region_bbox.x1 &&
           p.bbox.y0 >= t.region_bbox.y0 && p.bbox.y1 <= t.region_bbox.y1)) {
        inside_table = true;
        break;
      }
    }
    if (inside_table) {
      warnings.push_back("paragraph overlapping table dropped: \"" +
                         p.text.substr(0, 32) + "\"");
      continue;
    }
    PdfCell c;
    c.kind = CellKind::Text;
    c.bbox = p.bbox;
    c.content = p;
    out.push_back(std::move(c));
  }
  for (const Rect& r : image_regions) {
    PdfCell c;
    c.kind = CellKind::Image;
    c.bbox = r;
    c.content = std::string{};
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const PdfCell& a, const PdfCell& b) {
    if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
    return a.bbox.x0 < b.bbox.x0;
  });
  return out;
}

std::string document_to_json(const DocumentOutput& doc) {
  json root;
  root["version"] = 1;
  json pages = json::array();
  for (const PageOutput& page : doc.pages) {
    json jp;
    jp["page_index"] = page.page_index;
    json cells = json::array();
    for (const PdfCell& cell : page.cells) {
      json jc;
      jc["kind"] = cell.kind == CellKind::Text
                       ? "text"
                       : cell.kind == CellKind::Table ? "table" : "image";
      jc["bbox"] = rect_json(cell.bbox);
      if (cell.kind == CellKind::Text) {
        const Paragraph& p = std::get<Paragraph>(cell.content);
        jc["text"] = p.text;
        jc["line_count"] = p.line_count;
      } else if (cell.kind == CellKind::Table) {
        const TableStructure& t = std::get<TableStructure>(cell.content);
        jc["rows"] = t.n_rows;
        jc["cols"] = t.n_cols;
        json jcells = json::array();
        for (const LogicalCell& lc : t.cells) {
          json j;
          j["row"] = lc.row;
          j["col"] = lc.col;
          j["rowspan"] = lc.rowspan;
          j["colspan"] = lc.colspan;
          j["bbox"] = rect_json(lc.bbox);
          j["text"] = lc.text;
          jcells.push_back(std::move(j));
        }
        jc["cells"] = std::move(jcells);
        if (!t.warnings.empty()) jc["warnings"] = t.warnings;
      } else {
        jc["image"] = std::get<std::string>(cell.content);
      }
      cells.push_back(std::move(jc));
    }
    jp["cells"] = std::move(cells);
    if (!page.warnings.empty()) jp["warnings"] = page.warnings;
    pages.push_back(std::move(jp));
  }
  root["pages"] = std::move(pages);
  return root.dump();
}

}  // namespace gridlock
