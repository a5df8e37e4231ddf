#pragma once

#include <string>
#include <vector>

#include "gridlock/geometry.hpp"

namespace gridlock {

// Every numeric knob in the pipeline, overridable from a flat key=value file.
struct Config {
  Tolerances tol;
  int binarize_window = 31;
  int binarize_offset = 10;
  double min_len_frac = 0.04;
  double thin_rule_max = 3.0;
  double iou_thresh = 0.5;
  double dpi = 150;
};

struct ConfigKeyDoc {
  const char* key;
  const char* doc;
};

// Documented key list, for --help and the README.
const std::vector<ConfigKeyDoc>& config_keys();

// Apply "key = value" lines ('#' comments, blank lines skipped) on top of
// cfg. Throws ConfigError naming the line for unknown keys, bad numbers, or
// out-of-range values.
void apply_config_text(Config& cfg, const std::string& text);

// Read and apply a config file. Throws ConfigError if unreadable.
void apply_config_file(Config& cfg, const std::string& path);

}  // namespace gridlock
