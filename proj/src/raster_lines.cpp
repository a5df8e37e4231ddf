#include "gridlock/raster_lines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

// Horizontal pass of the separable window count: out(x,y) = number of set
// pixels in [x-w/2, x+w-1-w/2] on row y (anchor at w/2, so even widths lean
// left), out-of-bounds treated as 0.
std::vector<std::uint16_t> window_count_rows(const BinaryImage& img, int w) {
  int lo_off = -(w / 2), hi_off = w - 1 - w / 2;
  std::vector<std::uint16_t> out(img.bits.size(), 0);
  std::vector<std::int32_t> prefix(static_cast<std::size_t>(img.width_px) + 1, 0);
  for (int y = 0; y < img.height_px; ++y) {
    const std::uint8_t* row = img.bits.data() + static_cast<std::size_t>(y) * img.width_px;
    for (int x = 0; x < img.width_px; ++x) prefix[x + 1] = prefix[x] + row[x];
    std::uint16_t* orow = out.data() + static_cast<std::size_t>(y) * img.width_px;
    for (int x = 0; x < img.width_px; ++x) {
      int lo = std::max(0, x + lo_off);
      int hi = std::min(img.width_px - 1, x + hi_off);
      orow[x] = static_cast<std::uint16_t>(hi < lo ? 0 : prefix[hi + 1] - prefix[lo]);
    }
  }
  return out;
}

// Vertical pass over a count image, same anchor convention per column.
std::vector<std::uint32_t> window_count_cols(const std::vector<std::uint16_t>& in,
                                             int w_px, int h_px, int h) {
  int lo_off = -(h / 2), hi_off = h - 1 - h / 2;
  std::vector<std::uint32_t> out(in.size(), 0);
  std::vector<std::uint32_t> col_prefix(static_cast<std::size_t>(h_px) + 1, 0);
  for (int x = 0; x < w_px; ++x) {
    for (int y = 0; y < h_px; ++y)
      col_prefix[y + 1] = col_prefix[y] + in[static_cast<std::size_t>(y) * w_px + x];
    for (int y = 0; y < h_px; ++y) {
      int lo = std::max(0, y + lo_off);
      int hi = std::min(h_px - 1, y + hi_off);
      out[static_cast<std::size_t>(y) * w_px + x] =
          hi < lo ? 0 : col_prefix[hi + 1] - col_prefix[lo];
    }
  }
  return out;
}

}  // namespace

BinaryImage binarize(const RasterPage& img, int window, int offset) {
  if (window % 2 == 0) throw ConfigError("binarize: window must be odd");
  int w = img.width_px, h = img.height_px;
  BinaryImage out(w, h);
  int hw = window / 2;
  // Separable edge-clamped window sums: pixels outside the image replicate the
  // nearest edge pixel, so every window covers exactly window^2 samples.
  std::vector<std::int64_t> row_sums(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(std::max(w, h)) + 1, 0);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = img.pixels.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + row[x];
    std::int64_t* orow = row_sums.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      int lo = std::max(0, x - hw), hi = std::min(w - 1, x + hw);
      std::int64_t sum = prefix[hi + 1] - prefix[lo];
      if (x - hw < 0) sum += static_cast<std::int64_t>(hw - x) * row[0];
      if (x + hw > w - 1) sum += static_cast<std::int64_t>(x + hw - (w - 1)) * row[w - 1];
      orow[x] = sum;
    }
  }
  double denom = static_cast<double>(window) * window;
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y)
      prefix[y + 1] = prefix[y] + row_sums[static_cast<std::size_t>(y) * w + x];
    for (int y = 0; y < h; ++y) {
      int lo = std::max(0, y - hw), hi = std::min(h - 1, y + hw);
      std::int64_t sum = prefix[hi + 1] - prefix[lo];
      if (y - hw < 0) sum += static_cast<std::int64_t>(hw - y) * row_sums[x];
      if (y + hw > h - 1)
        sum += static_cast<std::int64_t>(y + hw - (h - 1)) *
               row_sums[static_cast<std::size_t>(h - 1) * w + x];
      double mean = static_cast<double>(sum) / denom;
      out.at(x, y) = img.at(x, y) < mean - offset ? 1 : 0;
    }
  }
  return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
  auto rows = window_count_rows(img, se.width);
  auto counts = window_count_cols(rows, img.width_px, img.height_px, se.height);
  BinaryImage out(img.width_px, img.height_px);
  std::uint32_t full = static_cast<std::uint32_t>(se.width) * se.height;
  for (std::size_t i = 0; i < counts.size(); ++i) out.bits[i] = counts[i] == full ? 1 : 0;
  return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
  auto rows = window_count_rows(img, se.width);
  auto counts = window_count_cols(rows, img.width_px, img.height_px, se.height);
  BinaryImage out(img.width_px, img.height_px);
  for (std::size_t i = 0; i < counts.size(); ++i) out.bits[i] = counts[i] > 0 ? 1 : 0;
  return out;
}

namespace {

struct Component {
  int xmin, xmax, ymin, ymax;
  std::uint64_t sum_x = 0, sum_y = 0;
  std::uint64_t count = 0;
};

std::vector<Component> connected_components(const BinaryImage& mask) {
  std::vector<Component> comps;
  std::vector<std::uint8_t> seen(mask.bits.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < mask.height_px; ++y) {
    for (int x = 0; x < mask.width_px; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * mask.width_px + x;
      if (!mask.bits[idx] || seen[idx]) continue;
      Component c{x, x, y, y};
      stack.push_back({x, y});
      seen[idx] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        c.xmin = std::min(c.xmin, cx);
        c.xmax = std::max(c.xmax, cx);
        c.ymin = std::min(c.ymin, cy);
        c.ymax = std::max(c.ymax, cy);
        c.sum_x += cx;
        c.sum_y += cy;
        ++c.count;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= mask.width_px || ny >= mask.height_px) continue;
            std::size_t nidx = static_cast<std::size_t>(ny) * mask.width_px + nx;
            if (mask.bits[nidx] && !seen[nidx]) {
              seen[nidx] = 1;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      comps.push_back(c);
    }
  }
  return comps;
}

int kernel_length(double min_len_frac, int extent_px) {
  int k = std::max(5, static_cast<int>(std::lround(min_len_frac * extent_px)));
  return k | 1;  // odd so opening is centered
}

}  // namespace

std::vector<Segment> extract_rule_segments(const BinaryImage& img, double dpi,
                                           double min_len_frac,
                                           const Tolerances& tol) {
  double scale = 72.0 / dpi;
  std::vector<Segment> h_segs, v_segs;

  int kh = kernel_length(min_len_frac, img.width_px);
  BinaryImage h_mask = dilate(erode(img, {kh, 1}), {kh, 1});
  for (const Component& c : connected_components(h_mask)) {
    if (c.xmax - c.xmin + 1 < kh) continue;
    Segment s;
    s.orientation = Orientation::Horizontal;
    s.position = (static_cast<double>(c.sum_y) / c.count + 0.5) * scale;
    s.lo = c.xmin * scale;
    s.hi = (c.xmax + 1) * scale;
    h_segs.push_back(s);
  }

  int kv = kernel_length(min_len_frac, img.height_px);
  BinaryImage v_mask = dilate(erode(img, {1, kv}), {1, kv});
  for (const Component& c : connected_components(v_mask)) {
    if (c.ymax - c.ymin + 1 < kv) continue;
    Segment s;
    s.orientation = Orientation::Vertical;
    s.position = (static_cast<double>(c.sum_x) / c.count + 0.5) * scale;
    s.lo = c.ymin * scale;
    s.hi = (c.ymax + 1) * scale;
    v_segs.push_back(s);
  }

  std::vector<Segment> out = merge_collinear(h_segs, tol);
  std::vector<Segment> v_merged = merge_collinear(v_segs, tol);
  out.insert(out.end(), v_merged.begin(), v_merged.end());
  return out;
}

std::vector<Point> find_intersections(const std::vector<Segment>& h,
                                      const std::vector<Segment>& v,
                                      const Tolerances& tol) {
  std::vector<Point> out;
  for (const Segment& hs : h) {
    for (const Segment& vs : v) {
      if (hs.position < vs.lo - tol.join_tol || hs.position > vs.hi + tol.join_tol)
        continue;
      if (vs.position < hs.lo - tol.join_tol || vs.position > hs.hi + tol.join_tol)
        continue;
      Point p{vs.position, hs.position};
      bool dup = false;
      for (const Point& q : out) {
        if (std::abs(q.x - p.x) <= tol.line_snap_tol &&
            std::abs(q.y - p.y) <= tol.line_snap_tol) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(p);
    }
  }
  return out;
}

}  // namespace gridlock
