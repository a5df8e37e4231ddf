#include <doctest.h>

#include "gridlock/table_region.hpp"

using namespace gridlock;

namespace {

PageGraphics grid_page(double x0, double y0, double x1, double y1, int nh, int nv) {
  PageGraphics p;
  p.width = 400;
  p.height = 600;
  for (int i = 0; i < nh; ++i) {
    double y = y0 + (y1 - y0) * i / (nh - 1);
    p.segments.push_back({Orientation::Horizontal, y, x0, x1});
  }
  for (int j = 0; j < nv; ++j) {
    double x = x0 + (x1 - x0) * j / (nv - 1);
    p.segments.push_back({Orientation::Vertical, x, y0, y1});
  }
  return p;
}

}  // namespace

TEST_CASE("a full rule grid becomes one wired region") {
  PageGraphics p = grid_page(50, 50, 350, 200, 3, 4);
  auto regions = detect_regions(p, {});
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].kind == RegionKind::Wired);
  CHECK(regions[0].h_segments.size() == 3);
  CHECK(regions[0].v_segments.size() == 4);
  CHECK(regions[0].bbox.x0 == doctest::Approx(50));
  CHECK(regions[0].bbox.y1 == doctest::Approx(200));
}

TEST_CASE("two separated grids come back in reading order") {
  PageGraphics top = grid_page(50, 50, 350, 150, 2, 2);
  PageGraphics bottom = grid_page(50, 300, 350, 400, 3, 3);
  PageGraphics p = top;
  for (const Segment& s : bottom.segments) p.segments.push_back(s);
  auto regions = detect_regions(p, {});
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].bbox.y0 == doctest::Approx(50));
  CHECK(regions[1].bbox.y0 == doctest::Approx(300));
}

TEST_CASE("fewer than two rules per axis is not a wired region") {
  PageGraphics p;
  p.width = 400;
  p.height = 600;
  p.segments.push_back({Orientation::Horizontal, 100, 0, 300});
  p.segments.push_back({Orientation::Horizontal, 200, 0, 300});
  p.segments.push_back({Orientation::Vertical, 150, 50, 250});
  CHECK(detect_regions(p, {}).empty());
}

TEST_CASE("non-crossing parallel rules form no region") {
  PageGraphics p;
  p.width = 400;
  p.height = 600;
  for (double y : {100.0, 150.0, 200.0})
    p.segments.push_back({Orientation::Horizontal, y, 0, 300});
  CHECK(detect_regions(p, {}).empty());
}

TEST_CASE("aligned borderless text grid is flagged wireless") {
  PageGraphics p;
  p.width = 400;
  p.height = 600;
  for (double y : {100.0, 130.0, 160.0})
    for (double x : {50.0, 150.0, 250.0}) {
      TextSpan ts;
      ts.bbox = Rect{x, y, x + 60, y + 12};
      ts.text = "cell";
      p.text_spans.push_back(ts);
    }
  auto regions = detect_regions(p, {});
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].kind == RegionKind::Wireless);
}

TEST_CASE("scattered text is not a wireless region") {
  PageGraphics p;
  p.width = 400;
  p.height = 600;
  double xs[] = {10, 90, 33, 210, 157};
  double ys[] = {20, 140, 260, 380, 500};
  for (int i = 0; i < 5; ++i) {
    TextSpan ts;
    ts.bbox = Rect{xs[i], ys[i], xs[i] + 50, ys[i] + 12};
    ts.text = "word";
    p.text_spans.push_back(ts);
  }
  CHECK(detect_regions(p, {}).empty());
}
