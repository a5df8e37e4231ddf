#include <doctest.h>

#include <random>

#include "gridlock/errors.hpp"
#include "gridlock/geometry.hpp"

using namespace gridlock;

TEST_CASE("merge_collinear joins overlapping near-collinear segments") {
  Tolerances tol;
  std::vector<Segment> in = {
      {Orientation::Horizontal, 100.0, 10.0, 50.0},
      {Orientation::Horizontal, 101.0, 48.0, 90.0},
  };
  auto out = merge_collinear(in, tol);
  REQUIRE(out.size() == 1);
  CHECK(out[0].lo == doctest::Approx(10.0));
  CHECK(out[0].hi == doctest::Approx(90.0));
  // Length-weighted mean of positions: (100*40 + 101*42) / 82.
  CHECK(out[0].position == doctest::Approx((100.0 * 40 + 101.0 * 42) / 82.0));
}

TEST_CASE("merge_collinear bridges gaps up to join_tol only") {
  Tolerances tol;  // join_tol = 3
  std::vector<Segment> near = {
      {Orientation::Horizontal, 10.0, 0.0, 20.0},
      {Orientation::Horizontal, 10.0, 22.5, 40.0},
  };
  CHECK(merge_collinear(near, tol).size() == 1);
  std::vector<Segment> far = {
      {Orientation::Horizontal, 10.0, 0.0, 20.0},
      {Orientation::Horizontal, 10.0, 24.0, 40.0},
  };
  CHECK(merge_collinear(far, tol).size() == 2);
}

TEST_CASE("merge_collinear keeps distinct positions apart") {
  Tolerances tol;  // line_snap_tol = 2
  std::vector<Segment> in = {
      {Orientation::Horizontal, 10.0, 0.0, 50.0},
      {Orientation::Horizontal, 15.0, 0.0, 50.0},
  };
  CHECK(merge_collinear(in, tol).size() == 2);
}

TEST_CASE("merge_collinear rejects mixed orientations") {
  Tolerances tol;
  std::vector<Segment> in = {
      {Orientation::Horizontal, 1.0, 0.0, 5.0},
      {Orientation::Vertical, 1.0, 0.0, 5.0},
  };
  CHECK_THROWS_AS(merge_collinear(in, tol), InvalidInputError);
}

TEST_CASE("merge_collinear is idempotent and sorted on random input") {
  std::mt19937_64 rng(7);
  Tolerances tol;
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Segment> in;
    int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      double pos = static_cast<double>(rng() % 40);
      double lo = static_cast<double>(rng() % 100);
      in.push_back({Orientation::Vertical, pos, lo, lo + 1 + static_cast<double>(rng() % 50)});
    }
    auto once = merge_collinear(in, tol);
    auto twice = merge_collinear(once, tol);
    CHECK(once == twice);
    for (std::size_t i = 1; i < once.size(); ++i) {
      bool sorted = once[i - 1].position < once[i].position ||
                    (once[i - 1].position == once[i].position && once[i - 1].lo <= once[i].lo);
      CHECK(sorted);
    }
    // Total covered length never shrinks below any single input segment.
    for (const Segment& s : in) {
      bool contained = false;
      for (const Segment& m : once)
        if (m.lo <= s.lo + 1e-9 && m.hi >= s.hi - 1e-9) contained = true;
      CHECK(contained);
    }
  }
}

TEST_CASE("rect_iou") {
  Rect a{0, 0, 10, 10};
  CHECK(rect_iou(a, a) == doctest::Approx(1.0));
  CHECK(rect_iou(a, Rect{20, 20, 30, 30}) == doctest::Approx(0.0));
  // 5x10 overlap over union 150.
  CHECK(rect_iou(a, Rect{5, 0, 15, 10}) == doctest::Approx(50.0 / 150.0));
  // Degenerate rects have zero area.
  CHECK(rect_iou(Rect{0, 0, 0, 0}, a) == doctest::Approx(0.0));
}

TEST_CASE("snap_1d clusters by gap and returns means") {
  auto clusters = snap_1d({10.0, 10.4, 30.0, 29.8, 60.0}, 1.0);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0].canonical == doctest::Approx(10.2));
  CHECK(clusters[1].canonical == doctest::Approx(29.9));
  CHECK(clusters[2].canonical == doctest::Approx(60.0));
  CHECK(clusters[0].members.size() == 2);
}

TEST_CASE("snap_1d rejects empty input") {
  CHECK_THROWS_AS(snap_1d({}, 1.0), InvalidInputError);
}

TEST_CASE("snap_1d matches a brute-force single-linkage oracle") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 1 + static_cast<int>(rng() % 20);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(static_cast<double>(rng() % 1000) / 10.0);
    double tol = 0.5 + static_cast<double>(rng() % 40) / 10.0;
    auto clusters = snap_1d(vals, tol);

    // Oracle: sort values; a new cluster starts when the gap exceeds tol.
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<double>> oracle = {{sorted[0]}};
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] - sorted[i - 1] > tol) oracle.push_back({});
      oracle.back().push_back(sorted[i]);
    }
    REQUIRE(clusters.size() == oracle.size());
    std::size_t total_members = 0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      double mean = 0;
      for (double v : oracle[c]) mean += v;
      mean /= static_cast<double>(oracle[c].size());
      CHECK(clusters[c].canonical == doctest::Approx(mean));
      CHECK(clusters[c].members.size() == oracle[c].size());
      total_members += clusters[c].members.size();
    }
    CHECK(total_members == vals.size());
  }
}
