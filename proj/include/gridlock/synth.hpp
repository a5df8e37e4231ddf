#pragma once

#include <cstdint>

#include "gridlock/linecell.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

// SplitMix64: deterministic, splittable, identical across platforms.
// state' = state + 0x9E3779B97F4A7C15; output mixes with the two xor-shift
// multiply rounds from Steele et al.'s reference.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi].
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

struct SynthParams {
  std::uint64_t seed = 0;
  int max_rows = 12;
  int max_cols = 8;
  double merge_prob = 0.3;
  double skew_deg = 0;
  double dpi = 150;
  bool text_fill = true;
  double noise_sigma = 0;
};

struct SynthItem {
  TableStructure ground_truth;
  PageGraphics page;  // vector PIF with rules and optional text spans
  RasterPage raster;  // rendered rules (text omitted), optionally skewed
};

// Deterministic synthetic wired table: same params -> identical triple.
// Throws ConfigError on infeasible parameters.
SynthItem gen_table(const SynthParams& params);

}  // namespace gridlock
