#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridlock/geometry.hpp"

namespace gridlock {

struct TextSpan {
  Rect bbox;
  std::string text;  // UTF-8, non-empty
  // Optional per-character widths (one per code point). When present their
  // sum approximates the bbox width.
  std::optional<std::vector<double>> char_advances;
};

inline bool operator==(const TextSpan& a, const TextSpan& b) {
  return a.bbox == b.bbox && a.text == b.text &&
         a.char_advances == b.char_advances;
}

enum class SourceKind { DigitalPdf, Image };

// The Page Interchange Format model: everything the table core needs from a
// page, independent of where it came from.
struct PageGraphics {
  int page_index = 0;
  double width = 0;
  double height = 0;
  std::vector<TextSpan> text_spans;
  std::vector<Segment> segments;
  std::vector<Rect> rects;
  SourceKind source_kind = SourceKind::DigitalPdf;
};

bool operator==(const PageGraphics& a, const PageGraphics& b);

struct RasterPage {
  int width_px = 0;
  int height_px = 0;
  double dpi = 150;
  std::vector<std::uint8_t> pixels;  // row-major grayscale, 0=black

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width_px + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width_px + x];
  }
};

// Number of Unicode code points in a UTF-8 string.
std::size_t utf8_length(const std::string& s);

// Serialize to the versioned PIF JSON document. Deterministic: stable field
// order, floats at 3 decimal places.
std::string pif_save(const PageGraphics& page);

// Parse a PIF document. Throws ParseError naming the offending field on
// schema violations, unknown versions, or invariant failures.
PageGraphics pif_load(const std::string& bytes);

struct Violation {
  std::string field;
  std::string rule;
};

// Invariant check; empty result means the page is well formed.
std::vector<Violation> validate(const PageGraphics& page);

}  // namespace gridlock
