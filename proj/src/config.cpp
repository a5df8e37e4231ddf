#include "gridlock/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value, int line_no) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ConfigError("config line " + std::to_string(line_no) + ": " + key +
                      ": not a number: " + value);
  return v;
}

}  // namespace

const std::vector<ConfigKeyDoc>& config_keys() {
  static const std::vector<ConfigKeyDoc> keys = {
      {"line_snap_tol", "rule-to-boundary snap distance, pt (default 2.0)"},
      {"edge_cover_ratio", "fraction of a unit edge a rule must cover (default 0.8)"},
      {"join_tol", "max gap for segment crossings and collinear merges, pt (default 3.0)"},
      {"overlap_frac", "span/cell overlap fraction for text assignment (default 0.5)"},
      {"binarize_window", "adaptive threshold window, odd pixels (default 31)"},
      {"binarize_offset", "adaptive threshold offset, gray levels (default 10)"},
      {"min_len_frac", "rule kernel length as a fraction of page extent (default 0.04)"},
      {"thin_rule_max", "filled rects thinner than this become rules, pt (default 3.0)"},
      {"iou_thresh", "bbox IoU threshold pairing tables in evaluation (default 0.5)"},
      {"dpi", "raster resolution for images and rasterized pages (default 150)"},
  };
  return keys;
}

void apply_config_text(Config& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got: " + s);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    double v = parse_number(key, value, line_no);
    auto positive = [&](double x) {
      if (x <= 0)
        throw ConfigError("config line " + std::to_string(line_no) + ": " + key +
                          " must be positive");
      return x;
    };
    if (key == "line_snap_tol") {
      cfg.tol.line_snap_tol = positive(v);
    } else if (key == "edge_cover_ratio") {
      if (v <= 0 || v > 1)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": edge_cover_ratio must lie in (0, 1]");
      cfg.tol.edge_cover_ratio = v;
    } else if (key == "join_tol") {
      cfg.tol.join_tol = positive(v);
    } else if (key == "overlap_frac") {
      if (v < 0 || v > 1)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": overlap_frac must lie in [0, 1]");
      cfg.tol.overlap_frac = v;
    } else if (key == "binarize_window") {
      int w = static_cast<int>(v);
      if (w != v || w < 3 || w % 2 == 0)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": binarize_window must be an odd integer >= 3");
      cfg.binarize_window = w;
    } else if (key == "binarize_offset") {
      cfg.binarize_offset = static_cast<int>(v);
    } else if (key == "min_len_frac") {
      if (v <= 0 || v > 1)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": min_len_frac must lie in (0, 1]");
      cfg.min_len_frac = v;
    } else if (key == "thin_rule_max") {
      cfg.thin_rule_max = positive(v);
    } else if (key == "iou_thresh") {
      if (v <= 0 || v > 1)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": iou_thresh must lie in (0, 1]");
      cfg.iou_thresh = v;
    } else if (key == "dpi") {
      cfg.dpi = positive(v);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key: " + key);
    }
  }
}

void apply_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

}  // namespace gridlock
