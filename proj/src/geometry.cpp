#include "gridlock/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

bool mergeable(const Segment& a, const Segment& b, const Tolerances& tol) {
  if (std::abs(a.position - b.position) > tol.line_snap_tol) return false;
  double gap = std::max(a.lo, b.lo) - std::min(a.hi, b.hi);
  return gap <= tol.join_tol;
}

Segment merged(const Segment& a, const Segment& b) {
  Segment out;
  out.orientation = a.orientation;
  double wa = a.length();
  double wb = b.length();
  out.position = (a.position * wa + b.position * wb) / (wa + wb);
  out.lo = std::min(a.lo, b.lo);
  out.hi = std::max(a.hi, b.hi);
  return out;
}

}  // namespace

std::vector<Segment> merge_collinear(const std::vector<Segment>& segments,
                                     const Tolerances& tol) {
  if (segments.empty()) return {};
  Orientation o = segments.front().orientation;
  for (const Segment& s : segments) {
    if (s.orientation != o)
      throw InvalidInputError("merge_collinear: mixed orientations");
  }
  std::vector<Segment> out = segments;
  // Fixpoint: merge until no pair is within tolerance. Segment counts per
  // page are small, so the quadratic pass is fine.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (mergeable(out[i], out[j], tol)) {
          out[i] = merged(out[i], out[j]);
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.lo < b.lo;
  });
  return out;
}

double rect_iou(const Rect& a, const Rect& b) {
  double ix = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  double iy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (ix <= 0 || iy <= 0) return 0.0;
  double inter = ix * iy;
  double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

std::vector<Cluster1D> snap_1d(const std::vector<double>& values, double tol) {
  if (values.empty()) throw InvalidInputError("snap_1d: empty input");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<Cluster1D> clusters;
  Cluster1D cur;
  double sum = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t idx = order[k];
    if (!cur.members.empty() && values[idx] - values[order[k - 1]] > tol) {
      cur.canonical = sum / static_cast<double>(cur.members.size());
      clusters.push_back(std::move(cur));
      cur = Cluster1D{};
      sum = 0;
    }
    cur.members.push_back(idx);
    sum += values[idx];
  }
  cur.canonical = sum / static_cast<double>(cur.members.size());
  clusters.push_back(std::move(cur));
  return clusters;
}

}  // namespace gridlock
