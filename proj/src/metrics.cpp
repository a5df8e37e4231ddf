#include "gridlock/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

std::size_t count_nodes(const TreeNode& n) {
  std::size_t c = 1;
  for (const TreeNode& ch : n.children) c += count_nodes(ch);
  return c;
}

}  // namespace

std::size_t node_count(const TableTree& t) { return count_nodes(t.root); }

// ---------------------------------------------------------------------------
// HTML parsing

namespace {

struct Tag {
  std::string name;
  bool closing = false;
  bool self_closing = false;
  int rowspan = 1;
  int colspan = 1;
  std::size_t pos = 0;
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class HtmlScanner {
 public:
  explicit HtmlScanner(const std::string& html) : s_(html) {}

  bool at_end() const { return pos_ >= s_.size(); }
  std::size_t pos() const { return pos_; }

  // Text up to the next '<'.
  std::string take_text() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '<') ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Tag take_tag() {
    Tag tag;
    tag.pos = pos_;
    ++pos_;  // '<'
    if (pos_ < s_.size() && s_[pos_] == '/') {
      tag.closing = true;
      ++pos_;
    }
    std::size_t name_start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_]))))
      ++pos_;
    tag.name = lower(s_.substr(name_start, pos_ - name_start));
    if (tag.name.empty())
      throw ParseError("html: empty tag name at byte " + std::to_string(tag.pos));
    // Attributes.
    while (pos_ < s_.size() && s_[pos_] != '>') {
      if (s_[pos_] == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
        tag.self_closing = true;
        ++pos_;
        break;
      }
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
        continue;
      }
      std::size_t attr_start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '=' && s_[pos_] != '>' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string attr = lower(s_.substr(attr_start, pos_ - attr_start));
      std::string value;
      if (pos_ < s_.size() && s_[pos_] == '=') {
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) {
          char q = s_[pos_++];
          std::size_t vstart = pos_;
          while (pos_ < s_.size() && s_[pos_] != q) ++pos_;
          value = s_.substr(vstart, pos_ - vstart);
          if (pos_ < s_.size()) ++pos_;
        } else {
          std::size_t vstart = pos_;
          while (pos_ < s_.size() && s_[pos_] != '>' &&
                 !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
          value = s_.substr(vstart, pos_ - vstart);
        }
      }
      if (attr == "rowspan" || attr == "colspan") {
        int v = 1;
        try {
          v = std::stoi(value);
        } catch (...) {
          throw ParseError("html: bad " + attr + " at byte " + std::to_string(attr_start));
        }
        if (v < 1)
          throw ParseError("html: bad " + attr + " at byte " + std::to_string(attr_start));
        (attr == "rowspan" ? tag.rowspan : tag.colspan) = v;
      }
    }
    if (pos_ >= s_.size())
      throw ParseError("html: unterminated tag at byte " + std::to_string(tag.pos));
    ++pos_;  // '>'
    return tag;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string decode_entities(const std::string& in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '&') {
      std::size_t semi = in.find(';', i + 1);
      if (semi != std::string::npos && semi - i <= 6) {
        std::string ent = in.substr(i + 1, semi - i - 1);
        if (ent == "amp") { out += '&'; i = semi; continue; }
        if (ent == "lt") { out += '<'; i = semi; continue; }
        if (ent == "gt") { out += '>'; i = semi; continue; }
        if (ent == "quot") { out += '"'; i = semi; continue; }
      }
    }
    out += in[i];
  }
  return out;
}

// '\x01' marks a <br/> break (so it survives while literal source newlines
// collapse like any other whitespace). Runs of whitespace become one space,
// spaces adjacent to a break are dropped, ends are trimmed.
std::string normalize_ws(const std::string& in) {
  std::string out;
  bool pending_space = false;
  for (char c : in) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      pending_space = true;
    } else if (c == '\x01') {
      pending_space = false;
      out += '\n';
    } else {
      if (pending_space && !out.empty() && out.back() != '\n') out += ' ';
      pending_space = false;
      out += c;
    }
  }
  while (!out.empty() && (out.back() == ' ' || out.back() == '\n')) out.pop_back();
  std::size_t lead = 0;
  while (lead < out.size() && (out[lead] == ' ' || out[lead] == '\n')) ++lead;
  return out.substr(lead);
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

TableTree parse_table_html(const std::string& html) {
  HtmlScanner sc(html);
  TableTree tree;
  tree.root.label = NodeLabel::Table;
  bool seen_table = false;
  bool in_table = false;
  int wrapper_depth = 0;  // thead/tbody nesting, flattened
  TreeNode* cur_tr = nullptr;
  TreeNode* cur_td = nullptr;
  std::string td_text;

  while (!sc.at_end()) {
    std::string text = sc.take_text();
    if (!text.empty()) {
      if (cur_td) {
        td_text += text;
      } else if (!is_blank(text)) {
        throw ParseError("html: unexpected text outside a td");
      }
    }
    if (sc.at_end()) break;
    Tag tag = sc.take_tag();
    auto err = [&](const std::string& msg) {
      return ParseError("html: " + msg + " at byte " + std::to_string(tag.pos));
    };
    if (tag.name == "table") {
      if (tag.closing) {
        if (!in_table) throw err("</table> without <table>");
        if (cur_td) throw err("unclosed <td>");
        if (cur_tr) throw err("unclosed <tr>");
        in_table = false;
      } else {
        if (seen_table) throw err("multiple tables");
        seen_table = true;
        in_table = true;
      }
    } else if (tag.name == "thead" || tag.name == "tbody") {
      if (!in_table) throw err("<" + tag.name + "> outside table");
      wrapper_depth += tag.closing ? -1 : 1;
      if (wrapper_depth < 0) throw err("</" + tag.name + "> without opener");
    } else if (tag.name == "tr") {
      if (!in_table) throw err("<tr> outside table");
      if (tag.closing) {
        if (!cur_tr) throw err("</tr> without <tr>");
        if (cur_td) throw err("unclosed <td>");
        cur_tr = nullptr;
      } else {
        if (cur_tr) throw err("nested <tr>");
        TreeNode tr;
        tr.label = NodeLabel::Tr;
        tree.root.children.push_back(std::move(tr));
        cur_tr = &tree.root.children.back();
      }
    } else if (tag.name == "td" || tag.name == "th") {
      if (!cur_tr) throw err("<" + tag.name + "> outside a row");
      if (tag.closing) {
        if (!cur_td) throw err("</" + tag.name + "> without opener");
        cur_td->content = normalize_ws(decode_entities(td_text));
        cur_td = nullptr;
        td_text.clear();
      } else {
        if (cur_td) throw err("nested cells");
        TreeNode td;
        td.label = NodeLabel::Td;
        td.rowspan = tag.rowspan;
        td.colspan = tag.colspan;
        cur_tr->children.push_back(std::move(td));
        cur_td = &cur_tr->children.back();
        td_text.clear();
      }
    } else if (tag.name == "br") {
      if (!cur_td) throw err("<br/> outside a cell");
      td_text += '\x01';
    } else {
      throw err("unsupported tag <" + tag.name + ">");
    }
  }
  if (!seen_table) throw ParseError("html: no table element");
  if (in_table) throw ParseError("html: unclosed <table>");
  if (wrapper_depth != 0) throw ParseError("html: unclosed thead/tbody");
  return tree;
}

// ---------------------------------------------------------------------------
// Tree edit distance

double normalized_string_distance(const std::string& a, const std::string& b) {
  if (a == b) return 0.0;
  std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

namespace {

struct FlatNode {
  NodeLabel label;
  int rowspan, colspan;
  const std::string* content;
  int leftmost;  // postorder index of leftmost leaf
};

void flatten(const TreeNode& n, std::vector<FlatNode>& out, int& leftmost_out) {
  int my_leftmost = -1;
  for (const TreeNode& ch : n.children) {
    int child_leftmost;
    flatten(ch, out, child_leftmost);
    if (my_leftmost < 0) my_leftmost = child_leftmost;
  }
  if (my_leftmost < 0) my_leftmost = static_cast<int>(out.size());
  out.push_back({n.label, n.rowspan, n.colspan, &n.content, my_leftmost});
  leftmost_out = my_leftmost;
}

double relabel_cost(const FlatNode& a, const FlatNode& b) {
  if (a.label != b.label) return 1.0;
  if (a.label != NodeLabel::Td) return 0.0;
  if (a.rowspan != b.rowspan || a.colspan != b.colspan) return 1.0;
  return normalized_string_distance(*a.content, *b.content);
}

// Zhang-Shasha ordered tree edit distance.
double zhang_shasha(const std::vector<FlatNode>& a, const std::vector<FlatNode>& b) {
  int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  auto keyroots = [](const std::vector<FlatNode>& t) {
    std::vector<int> kr;
    int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i) {
      bool is_kr = true;
      for (int j = i + 1; j < n; ++j)
        if (t[j].leftmost == t[i].leftmost) { is_kr = false; break; }
      if (is_kr) kr.push_back(i);
    }
    return kr;
  };
  std::vector<int> kra = keyroots(a), krb = keyroots(b);
  std::vector<std::vector<double>> treedist(na, std::vector<double>(nb, 0));
  std::vector<std::vector<double>> fd(na + 2, std::vector<double>(nb + 2, 0));

  for (int i : kra) {
    for (int j : krb) {
      int li = a[i].leftmost, lj = b[j].leftmost;
      fd[li][lj] = 0;
      for (int di = li; di <= i; ++di) fd[di + 1][lj] = fd[di][lj] + 1;
      for (int dj = lj; dj <= j; ++dj) fd[li][dj + 1] = fd[li][dj] + 1;
      for (int di = li; di <= i; ++di) {
        for (int dj = lj; dj <= j; ++dj) {
          if (a[di].leftmost == li && b[dj].leftmost == lj) {
            double d = std::min({fd[di][dj + 1] + 1, fd[di + 1][dj] + 1,
                                 fd[di][dj] + relabel_cost(a[di], b[dj])});
            fd[di + 1][dj + 1] = d;
            treedist[di][dj] = d;
          } else {
            fd[di + 1][dj + 1] =
                std::min({fd[di][dj + 1] + 1, fd[di + 1][dj] + 1,
                          fd[a[di].leftmost][b[dj].leftmost] + treedist[di][dj]});
          }
        }
      }
    }
  }
  return treedist[na - 1][nb - 1];
}

void erase_contents(TreeNode& n) {
  n.content.clear();
  for (TreeNode& ch : n.children) erase_contents(ch);
}

}  // namespace

double tree_edit_distance(const TableTree& a, const TableTree& b) {
  std::vector<FlatNode> fa, fb;
  int lm;
  flatten(a.root, fa, lm);
  flatten(b.root, fb, lm);
  return zhang_shasha(fa, fb);
}

double teds(const TableTree& a, const TableTree& b) {
  double d = tree_edit_distance(a, b);
  double n = static_cast<double>(std::max(node_count(a), node_count(b)));
  return 1.0 - d / n;
}

double teds_struct(const TableTree& a, const TableTree& b) {
  TableTree sa = a, sb = b;
  erase_contents(sa.root);
  erase_contents(sb.root);
  return teds(sa, sb);
}

// ---------------------------------------------------------------------------
// Precision / recall

namespace {

bool cells_match(const TableStructure& a, const TableStructure& b) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) return false;
  if (a.cells.size() != b.cells.size()) return false;
  auto key = [](const LogicalCell& c) {
    return std::array<int, 4>{c.row, c.col, c.rowspan, c.colspan};
  };
  // Both cell lists are sorted by (row, col), so compare pairwise.
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (key(a.cells[i]) != key(b.cells[i])) return false;
  return true;
}

}  // namespace

EvalReport table_prf(const std::vector<TableStructure>& pred,
                     const std::vector<TableStructure>& gt, double iou_thresh) {
  EvalReport rep;
  rep.n_pred = static_cast<int>(pred.size());
  rep.n_gt = static_cast<int>(gt.size());
  for (const TableStructure& t : pred) rep.cell_pred += static_cast<long>(t.cells.size());
  for (const TableStructure& t : gt) rep.cell_gt += static_cast<long>(t.cells.size());

  struct Pair {
    double iou;
    std::size_t p, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < pred.size(); ++p)
    for (std::size_t g = 0; g < gt.size(); ++g) {
      double iou = rect_iou(pred[p].region_bbox, gt[g].region_bbox);
      if (iou >= iou_thresh) pairs.push_back({iou, p, g});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.p != b.p) return a.p < b.p;
    return a.g < b.g;
  });
  std::vector<bool> p_used(pred.size(), false), g_used(gt.size(), false);
  for (const Pair& pr : pairs) {
    if (p_used[pr.p] || g_used[pr.g]) continue;
    p_used[pr.p] = true;
    g_used[pr.g] = true;
    ++rep.n_matched;
    if (cells_match(pred[pr.p], gt[pr.g])) ++rep.n_correct;
    // Cell-level agreement by logical tuple.
    auto key = [](const LogicalCell& c) {
      return std::array<int, 4>{c.row, c.col, c.rowspan, c.colspan};
    };
    std::vector<std::array<int, 4>> gk;
    for (const LogicalCell& c : gt[pr.g].cells) gk.push_back(key(c));
    std::sort(gk.begin(), gk.end());
    for (const LogicalCell& c : pred[pr.p].cells)
      if (std::binary_search(gk.begin(), gk.end(), key(c))) ++rep.cell_correct;
  }
  rep.precision = rep.n_pred ? static_cast<double>(rep.n_correct) / rep.n_pred : 0;
  rep.recall = rep.n_gt ? static_cast<double>(rep.n_correct) / rep.n_gt : 0;
  rep.f1 = (rep.precision + rep.recall) > 0
               ? 2 * rep.precision * rep.recall / (rep.precision + rep.recall)
               : 0;
  rep.cell_precision =
      rep.cell_pred ? static_cast<double>(rep.cell_correct) / rep.cell_pred : 0;
  rep.cell_recall =
      rep.cell_gt ? static_cast<double>(rep.cell_correct) / rep.cell_gt : 0;
  return rep;
}

TableStructure tree_to_structure(const TableTree& t) {
  TableStructure out;
  std::vector<std::vector<bool>> occupied;
  auto ensure = [&](std::size_t r, std::size_t c) {
    if (occupied.size() <= r) occupied.resize(r + 1);
    for (auto& row : occupied)
      if (row.size() <= c) row.resize(c + 1, false);
  };
  int n_cols = 0;
  for (std::size_t r = 0; r < t.root.children.size(); ++r) {
    ensure(r, 0);
    std::size_t c = 0;
    for (const TreeNode& td : t.root.children[r].children) {
      while (c < occupied[r].size() && occupied[r][c]) ++c;
      LogicalCell cell;
      cell.row = static_cast<int>(r);
      cell.col = static_cast<int>(c);
      cell.rowspan = td.rowspan;
      cell.colspan = td.colspan;
      cell.text = td.content;
      ensure(r + static_cast<std::size_t>(td.rowspan) - 1,
             c + static_cast<std::size_t>(td.colspan) - 1);
      for (int dr = 0; dr < td.rowspan; ++dr)
        for (int dc = 0; dc < td.colspan; ++dc)
          occupied[r + static_cast<std::size_t>(dr)][c + static_cast<std::size_t>(dc)] =
              true;
      n_cols = std::max(n_cols, static_cast<int>(c) + td.colspan);
      cell.bbox = Rect{static_cast<double>(cell.col), static_cast<double>(cell.row),
                       static_cast<double>(cell.col + cell.colspan),
                       static_cast<double>(cell.row + cell.rowspan)};
      out.cells.push_back(std::move(cell));
    }
  }
  out.n_rows = static_cast<int>(t.root.children.size());
  out.n_cols = n_cols;
  out.region_bbox = Rect{0, 0, static_cast<double>(n_cols),
                         static_cast<double>(out.n_rows)};
  std::sort(out.cells.begin(), out.cells.end(), [](const LogicalCell& a,
                                                   const LogicalCell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

TableTree structure_to_tree(const TableStructure& t) {
  TableTree tree;
  tree.root.label = NodeLabel::Table;
  tree.root.children.resize(static_cast<std::size_t>(t.n_rows));
  for (TreeNode& tr : tree.root.children) tr.label = NodeLabel::Tr;
  for (const LogicalCell& c : t.cells) {
    TreeNode td;
    td.label = NodeLabel::Td;
    td.rowspan = c.rowspan;
    td.colspan = c.colspan;
    td.content = c.text;
    tree.root.children[static_cast<std::size_t>(c.row)].children.push_back(std::move(td));
  }
  return tree;
}

}  // namespace gridlock
