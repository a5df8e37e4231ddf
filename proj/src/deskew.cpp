#include "gridlock/deskew.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gridlock/errors.hpp"

namespace gridlock {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct InkPoints {
  std::vector<int> xs, ys;
};

InkPoints collect_ink(const BinaryImage& img) {
  InkPoints pts;
  for (int y = 0; y < img.height_px; ++y)
    for (int x = 0; x < img.width_px; ++x)
      if (img.at(x, y)) {
        pts.xs.push_back(x);
        pts.ys.push_back(y);
      }
  return pts;
}

// Variance of the sheared row-sum profile at angle theta.
double profile_variance(const InkPoints& pts, int width, int height, double theta_deg) {
  double t = std::tan(theta_deg * kDegToRad);
  int off_lo = static_cast<int>(std::floor(std::min(0.0, -t * (width - 1))));
  int off_hi = static_cast<int>(std::ceil(std::max(0.0, -t * (width - 1))));
  int nbins = height + (off_hi - off_lo);
  std::vector<std::uint32_t> bins(static_cast<std::size_t>(nbins), 0);
  for (std::size_t i = 0; i < pts.xs.size(); ++i) {
    int bin = static_cast<int>(std::lround(pts.ys[i] - t * pts.xs[i])) - off_lo;
    bin = std::clamp(bin, 0, nbins - 1);
    ++bins[static_cast<std::size_t>(bin)];
  }
  double mean = static_cast<double>(pts.xs.size()) / nbins;
  double var = 0;
  for (std::uint32_t c : bins) {
    double d = c - mean;
    var += d * d;
  }
  return var / nbins;
}

}  // namespace

SkewEstimate estimate_skew(const BinaryImage& img) {
  InkPoints pts = collect_ink(img);
  if (pts.xs.empty()) return {0.0, 0.0};

  std::vector<double> coarse_vars;
  double best_angle = 0, best_var = -1;
  for (int a = -45; a <= 45; ++a) {
    double v = profile_variance(pts, img.width_px, img.height_px, a);
    coarse_vars.push_back(v);
    if (v > best_var) {
      best_var = v;
      best_angle = a;
    }
  }
  double coarse_best = best_angle;
  for (int i = -10; i <= 10; ++i) {
    double a = coarse_best + 0.1 * i;
    if (a < -45 || a > 45 || i == 0) continue;
    double v = profile_variance(pts, img.width_px, img.height_px, a);
    if (v > best_var) {
      best_var = v;
      best_angle = a;
    }
  }

  std::sort(coarse_vars.begin(), coarse_vars.end());
  double med = coarse_vars[coarse_vars.size() / 2];
  double conf = best_var > 0 ? (best_var - med) / best_var : 0.0;
  return {best_angle, std::clamp(conf, 0.0, 1.0)};
}

RasterPage rotate_raster(const RasterPage& img, double angle_deg) {
  if (std::abs(angle_deg) > 45)
    throw InvalidInputError("rotate_raster: |angle| > 45 is out of scope");
  double a = angle_deg * kDegToRad;
  double c = std::cos(a), s = std::sin(a);

  int w = img.width_px, h = img.height_px;
  int nw = static_cast<int>(std::ceil(std::abs(c) * w + std::abs(s) * h));
  int nh = static_cast<int>(std::ceil(std::abs(s) * w + std::abs(c) * h));
  RasterPage out;
  out.width_px = nw;
  out.height_px = nh;
  out.dpi = img.dpi;
  out.pixels.assign(static_cast<std::size_t>(nw) * nh, 255);

  double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  double ncx = (nw - 1) / 2.0, ncy = (nh - 1) / 2.0;
  for (int y = 0; y < nh; ++y) {
    for (int x = 0; x < nw; ++x) {
      // Inverse map into the source.
      double dx = x - ncx, dy = y - ncy;
      double sx = c * dx + s * dy + cx;
      double sy = -s * dx + c * dy + cy;
      int x0 = static_cast<int>(std::floor(sx));
      int y0 = static_cast<int>(std::floor(sy));
      if (x0 < -1 || y0 < -1 || x0 > w - 1 || y0 > h - 1) continue;
      double fx = sx - x0, fy = sy - y0;
      auto sample = [&](int px, int py) -> double {
        if (px < 0 || py < 0 || px >= w || py >= h) return 255.0;
        return img.at(px, py);
      };
      double v = sample(x0, y0) * (1 - fx) * (1 - fy) +
                 sample(x0 + 1, y0) * fx * (1 - fy) +
                 sample(x0, y0 + 1) * (1 - fx) * fy +
                 sample(x0 + 1, y0 + 1) * fx * fy;
      out.at(x, y) = static_cast<std::uint8_t>(std::lround(v));
    }
  }
  return out;
}

CoarseOrientation coarse_orientation(const PageGraphics& page) {
  double h_mass = 0, v_mass = 0;
  for (const Segment& s : page.segments)
    (s.orientation == Orientation::Horizontal ? h_mass : v_mass) += s.length();
  for (const TextSpan& ts : page.text_spans) {
    if (ts.bbox.width() >= ts.bbox.height())
      h_mass += ts.bbox.width();
    else
      v_mass += ts.bbox.height();
  }
  if (v_mass >= 3 * h_mass && v_mass > 0) return CoarseOrientation::Deg90;
  if (h_mass >= 3 * v_mass && h_mass > 0) return CoarseOrientation::Deg0;
  return CoarseOrientation::Unknown;
}

CoarseOrientation coarse_orientation(const BinaryImage& img) {
  // Long-run mass along each axis.
  const int k = 21;
  BinaryImage h = dilate(erode(img, {k, 1}), {k, 1});
  BinaryImage v = dilate(erode(img, {1, k}), {1, k});
  double h_mass = 0, v_mass = 0;
  for (std::uint8_t b : h.bits) h_mass += b;
  for (std::uint8_t b : v.bits) v_mass += b;
  if (v_mass >= 3 * h_mass && v_mass > 0) return CoarseOrientation::Deg90;
  if (h_mass >= 3 * v_mass && h_mass > 0) return CoarseOrientation::Deg0;
  return CoarseOrientation::Unknown;
}

}  // namespace gridlock
