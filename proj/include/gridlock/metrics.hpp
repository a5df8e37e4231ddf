#pragma once

#include <string>
#include <vector>

#include "gridlock/linecell.hpp"

namespace gridlock {

enum class NodeLabel { Table, Tr, Td };

struct TreeNode {
  NodeLabel label = NodeLabel::Td;
  int rowspan = 1;   // td only
  int colspan = 1;   // td only
  std::string content;  // td only
  std::vector<TreeNode> children;
};

// Ordered tree of one HTML table: root is table, children tr, grandchildren
// td.
struct TableTree {
  TreeNode root;
};

std::size_t node_count(const TableTree& t);

// Parse the restricted table/tr/td grammar (thead/tbody flattened, th
// treated as td). Cell text has entities decoded, <br/> turned into
// newlines, whitespace runs collapsed, and ends trimmed. Throws ParseError
// with a byte position on malformed input.
TableTree parse_table_html(const std::string& html);

// Ordered-tree edit distance (Zhang-Shasha keyroots DP). Insert/delete cost
// 1; td-vs-td relabel costs 1 on span mismatch, else the normalized
// character-level edit distance of contents; other relabels cost 0 for
// identical labels and 1 otherwise.
double tree_edit_distance(const TableTree& a, const TableTree& b);

// teds = 1 - distance / max(node counts).
double teds(const TableTree& a, const TableTree& b);

// TEDS with every td content erased (spans kept).
double teds_struct(const TableTree& a, const TableTree& b);

// Normalized Levenshtein distance used for td content relabels, in [0,1].
double normalized_string_distance(const std::string& a, const std::string& b);

struct EvalReport {
  // Table level.
  int n_pred = 0;
  int n_gt = 0;
  int n_matched = 0;   // bbox-matched pairs
  int n_correct = 0;   // matched and structurally exact
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  // Cell level, over matched table pairs.
  long cell_pred = 0;
  long cell_gt = 0;
  long cell_correct = 0;
  double cell_precision = 0;
  double cell_recall = 0;
  // Per-item scores in input order (filled by callers that compute TEDS).
  std::vector<double> per_item_teds;
  std::vector<double> per_item_teds_struct;
};

// Pair predicted and ground-truth tables greedily by region-bbox IoU
// (threshold iou_thresh, one-to-one); a table is correct when its logical
// cell set matches the ground truth exactly.
EvalReport table_prf(const std::vector<TableStructure>& pred,
                     const std::vector<TableStructure>& gt,
                     double iou_thresh = 0.5);

// Convert an extracted structure into the tree the metrics operate on.
TableTree structure_to_tree(const TableStructure& t);

// Inverse direction for HTML ground truth: recover logical grid coordinates
// with the standard occupancy-grid placement. The bbox is synthetic
// (units = lattice units) since HTML carries no geometry.
TableStructure tree_to_structure(const TableTree& t);

}  // namespace gridlock
