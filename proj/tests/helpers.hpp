#pragma once

// Shared test utilities: independent oracles and fixture builders. Oracles
// deliberately use the most direct definition available, not the library's
// algorithms.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridlock/linecell.hpp"
#include "gridlock/metrics.hpp"
#include "gridlock/raster_lines.hpp"

namespace testutil {

// ---------------------------------------------------------------------------
// Naive binary morphology / binarization (direct window loops).

inline gridlock::BinaryImage naive_erode(const gridlock::BinaryImage& img,
                                         const gridlock::StructuringElement& se) {
  gridlock::BinaryImage out(img.width_px, img.height_px);
  int rx = se.width / 2, ry = se.height / 2;
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x) {
      bool all = true;
      for (int dy = -ry; dy <= se.height - 1 - ry && all; ++dy)
        for (int dx = -rx; dx <= se.width - 1 - rx && all; ++dx) {
          int xx = x + dx, yy = y + dy;
          bool v = xx >= 0 && xx < img.width_px && yy >= 0 && yy < img.height_px &&
                   img.at(xx, yy);
          if (!v) all = false;
        }
      out.at(x, y) = all ? 1 : 0;
    }
  return out;
}

inline gridlock::BinaryImage naive_dilate(const gridlock::BinaryImage& img,
                                          const gridlock::StructuringElement& se) {
  gridlock::BinaryImage out(img.width_px, img.height_px);
  int rx = se.width / 2, ry = se.height / 2;
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x) {
      bool any = false;
      for (int dy = -ry; dy <= se.height - 1 - ry && !any; ++dy)
        for (int dx = -rx; dx <= se.width - 1 - rx && !any; ++dx) {
          int xx = x + dx, yy = y + dy;
          if (xx >= 0 && xx < img.width_px && yy >= 0 && yy < img.height_px &&
              img.at(xx, yy))
            any = true;
        }
      out.at(x, y) = any ? 1 : 0;
    }
  return out;
}

inline gridlock::BinaryImage naive_binarize(const gridlock::RasterPage& img,
                                            int window, int offset) {
  gridlock::BinaryImage out(img.width_px, img.height_px);
  int r = window / 2;
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x) {
      long sum = 0;
      long count = 0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          int xx = std::clamp(x + dx, 0, img.width_px - 1);
          int yy = std::clamp(y + dy, 0, img.height_px - 1);
          sum += img.at(xx, yy);
          ++count;
        }
      double mean = static_cast<double>(sum) / static_cast<double>(count);
      out.at(x, y) = img.at(x, y) < mean - offset ? 1 : 0;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force ordered-forest edit distance (plain memoized recursion on
// rightmost roots) with the same cost model as the library.

inline double oracle_relabel(const gridlock::TreeNode& a, const gridlock::TreeNode& b) {
  if (a.label != b.label) return 1.0;
  if (a.label != gridlock::NodeLabel::Td) return 0.0;
  if (a.rowspan != b.rowspan || a.colspan != b.colspan) return 1.0;
  return gridlock::normalized_string_distance(a.content, b.content);
}

using Forest = std::vector<const gridlock::TreeNode*>;

inline std::size_t tree_size(const gridlock::TreeNode& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += tree_size(c);
  return n;
}

inline std::string forest_key(const Forest& f) {
  std::ostringstream ss;
  for (const auto* t : f) ss << t << ",";
  return ss.str();
}

inline double oracle_forest_dist(const Forest& f1, const Forest& f2,
                                 std::map<std::string, double>& memo) {
  if (f1.empty() && f2.empty()) return 0;
  std::string key = forest_key(f1) + "|" + forest_key(f2);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  double best;
  if (f1.empty()) {
    std::size_t n = 0;
    for (const auto* t : f2) n += tree_size(*t);
    best = static_cast<double>(n);
  } else if (f2.empty()) {
    std::size_t n = 0;
    for (const auto* t : f1) n += tree_size(*t);
    best = static_cast<double>(n);
  } else {
    const gridlock::TreeNode* v = f1.back();
    const gridlock::TreeNode* w = f2.back();
    // Delete v: v's children replace it at the end of the forest.
    Forest d1(f1.begin(), f1.end() - 1);
    for (const auto& c : v->children) d1.push_back(&c);
    double del = oracle_forest_dist(d1, f2, memo) + 1;
    // Insert w.
    Forest d2(f2.begin(), f2.end() - 1);
    for (const auto& c : w->children) d2.push_back(&c);
    double ins = oracle_forest_dist(f1, d2, memo) + 1;
    // Match v with w.
    Forest c1, c2;
    for (const auto& c : v->children) c1.push_back(&c);
    for (const auto& c : w->children) c2.push_back(&c);
    Forest r1(f1.begin(), f1.end() - 1), r2(f2.begin(), f2.end() - 1);
    double match = oracle_forest_dist(c1, c2, memo) +
                   oracle_forest_dist(r1, r2, memo) + oracle_relabel(*v, *w);
    best = std::min({del, ins, match});
  }
  memo[key] = best;
  return best;
}

inline double oracle_tree_edit_distance(const gridlock::TableTree& a,
                                        const gridlock::TableTree& b) {
  std::map<std::string, double> memo;
  return oracle_forest_dist({&a.root}, {&b.root}, memo);
}

// ---------------------------------------------------------------------------
// Random table-shaped trees (root table, rows, cells) bounded in size.

inline gridlock::TableTree random_tree(std::mt19937_64& rng, std::size_t max_nodes = 8) {
  static const std::vector<std::string> contents = {"", "a", "ab", "x&y", "q\nr", "zz"};
  gridlock::TableTree t;
  t.root.label = gridlock::NodeLabel::Table;
  std::size_t budget = 1 + rng() % max_nodes;  // target node count, >= 1
  std::size_t used = 1;
  while (used < budget) {
    gridlock::TreeNode tr;
    tr.label = gridlock::NodeLabel::Tr;
    ++used;
    std::size_t cells = rng() % 3;
    for (std::size_t i = 0; i < cells && used < budget; ++i) {
      gridlock::TreeNode td;
      td.label = gridlock::NodeLabel::Td;
      td.rowspan = 1 + static_cast<int>(rng() % 2);
      td.colspan = 1 + static_cast<int>(rng() % 2);
      td.content = contents[rng() % contents.size()];
      tr.children.push_back(std::move(td));
      ++used;
    }
    t.root.children.push_back(std::move(tr));
  }
  return t;
}

inline bool trees_equal(const gridlock::TreeNode& a, const gridlock::TreeNode& b) {
  if (a.label != b.label || a.children.size() != b.children.size()) return false;
  if (a.label == gridlock::NodeLabel::Td &&
      (a.rowspan != b.rowspan || a.colspan != b.colspan || a.content != b.content))
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!trees_equal(a.children[i], b.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Logical-structure comparison ignoring geometry and text.

inline bool same_structure(const gridlock::TableStructure& a,
                           const gridlock::TableStructure& b) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols ||
      a.cells.size() != b.cells.size())
    return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& ca = a.cells[i];
    const auto& cb = b.cells[i];
    if (ca.row != cb.row || ca.col != cb.col || ca.rowspan != cb.rowspan ||
        ca.colspan != cb.colspan)
      return false;
  }
  return true;
}

// Span-merge oracle: connected components of lattice units where adjacency
// means the shared edge is absent. Each component should be one cell's unit
// set; a non-rectangular component forces a repair warning instead.
inline std::vector<std::vector<int>> edge_components(
    const gridlock::Grid& grid, const gridlock::EdgePresence& edges) {
  int R = grid.n_rows(), C = grid.n_cols();
  std::vector<int> comp(static_cast<std::size_t>(R) * C, -1);
  int n_comp = 0;
  for (int start = 0; start < R * C; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> stack = {start};
    comp[static_cast<std::size_t>(start)] = n_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      int r = u / C, c = u % C;
      // Right neighbor: shared vertical edge v_edges[r][c+1].
      if (c + 1 < C && !edges.v_edges[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + 1)] &&
          comp[static_cast<std::size_t>(u + 1)] < 0) {
        comp[static_cast<std::size_t>(u + 1)] = n_comp;
        stack.push_back(u + 1);
      }
      if (c > 0 && !edges.v_edges[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] &&
          comp[static_cast<std::size_t>(u - 1)] < 0) {
        comp[static_cast<std::size_t>(u - 1)] = n_comp;
        stack.push_back(u - 1);
      }
      // Below neighbor: shared horizontal edge h_edges[r+1][c].
      if (r + 1 < R && !edges.h_edges[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(c)] &&
          comp[static_cast<std::size_t>(u + C)] < 0) {
        comp[static_cast<std::size_t>(u + C)] = n_comp;
        stack.push_back(u + C);
      }
      if (r > 0 && !edges.h_edges[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] &&
          comp[static_cast<std::size_t>(u - C)] < 0) {
        comp[static_cast<std::size_t>(u - C)] = n_comp;
        stack.push_back(u - C);
      }
    }
    ++n_comp;
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_comp));
  for (int u = 0; u < R * C; ++u)
    out[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])].push_back(u);
  return out;
}

// ---------------------------------------------------------------------------
// Minimal classic-xref PDF builder for frontend fixtures.

struct PdfBuilder {
  std::vector<std::string> objects;  // 1-based object bodies, without "N 0 obj"

  int add(const std::string& body) {
    objects.push_back(body);
    return static_cast<int>(objects.size());
  }

  std::string build() const {
    std::string out = "%PDF-1.4\n";
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      offsets.push_back(out.size());
      out += std::to_string(i + 1) + " 0 obj\n" + objects[i] + "\nendobj\n";
    }
    std::size_t xref_off = out.size();
    std::ostringstream x;
    x << "xref\n0 " << objects.size() + 1 << "\n";
    x << "0000000000 65535 f \n";
    for (std::size_t off : offsets) {
      char buf[24];
      std::snprintf(buf, sizeof(buf), "%010zu 00000 n \n", off);
      x << buf;
    }
    x << "trailer\n<< /Size " << objects.size() + 1 << " /Root 1 0 R >>\n"
      << "startxref\n" << xref_off << "\n%%EOF\n";
    return out + x.str();
  }
};

// A one-page PDF with the given content stream, optionally with a /F1 font
// that carries widths (600/1000 em per glyph for ASCII).
inline std::string make_pdf(const std::string& content, double w = 200, double h = 200,
                            bool with_font = false) {
  PdfBuilder b;
  b.add("<< /Type /Catalog /Pages 2 0 R >>");
  std::ostringstream page;
  page << "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 " << w << " " << h
       << "] /Contents 4 0 R";
  if (with_font) page << " /Resources << /Font << /F1 5 0 R >> >>";
  page << " >>";
  b.add("<< /Type /Pages /Kids [3 0 R] /Count 1 >>");
  b.add(page.str());
  b.add("<< /Length " + std::to_string(content.size()) + " >>\nstream\n" + content +
        "\nendstream");
  if (with_font) {
    std::string widths = "[";
    for (int i = 32; i <= 126; ++i) widths += " 600";
    widths += " ]";
    b.add("<< /Type /Font /Subtype /TrueType /BaseFont /Fixture /FirstChar 32 "
          "/LastChar 126 /Widths " + widths + " /MissingWidth 600 >>");
  }
  return b.build();
}

}  // namespace testutil
