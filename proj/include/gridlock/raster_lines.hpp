#pragma once

#include <cstdint>
#include <vector>

#include "gridlock/geometry.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

struct BinaryImage {
  int width_px = 0;
  int height_px = 0;
  std::vector<std::uint8_t> bits;  // row-major, 1 = ink

  BinaryImage() = default;
  BinaryImage(int w, int h) : width_px(w), height_px(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width_px + x];
  }
  std::uint8_t& at(int x, int y) {
    return bits[static_cast<std::size_t>(y) * width_px + x];
  }
};

// Rectangular all-ones structuring element, centered.
struct StructuringElement {
  int width = 1;
  int height = 1;
};

// Adaptive mean threshold: a pixel is ink iff its value is below the mean of
// its window x window neighborhood (edge-clamped) minus offset. O(pixels)
// via an integral image. Throws ConfigError if window is even.
BinaryImage binarize(const RasterPage& img, int window = 31, int offset = 10);

// Standard binary morphology; pixels outside the image count as 0, so the
// border erodes away.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

// Morphological opening with long thin kernels isolates rule lines, then
// connected components of each mask become Segments in page units
// (scale 72/dpi). Kernel length is min_len_frac of the image extent along
// the line direction, minimum 5 px.
std::vector<Segment> extract_rule_segments(const BinaryImage& img, double dpi,
                                           double min_len_frac = 0.04,
                                           const Tolerances& tol = {});

// All (h,v) crossings within join_tol, deduplicated within line_snap_tol.
std::vector<Point> find_intersections(const std::vector<Segment>& h,
                                      const std::vector<Segment>& v,
                                      const Tolerances& tol);

}  // namespace gridlock
