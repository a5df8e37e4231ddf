#pragma once

#include "gridlock/page_model.hpp"
#include "gridlock/raster_lines.hpp"

namespace gridlock {

struct SkewEstimate {
  double angle_deg = 0;   // in [-45, 45]
  double confidence = 0;  // in [0, 1]
};

enum class CoarseOrientation { Deg0, Deg90, Deg180, Deg270, Unknown };

// Coarse-to-fine projection-profile search: the candidate angle whose
// sheared row-sum profile has maximal variance. 1 degree steps over
// [-45, 45], then 0.1 degree steps within +-1 of the best. Blank images give
// (0, 0).
SkewEstimate estimate_skew(const BinaryImage& img);

// Rotate about the image center with bilinear interpolation, white fill,
// canvas grown to hold the rotated extent. Throws InvalidInputError when
// |angle| > 45.
RasterPage rotate_raster(const RasterPage& img, double angle_deg);

// Heuristic 0/90 orientation guess from horizontal-vs-vertical primitive
// mass; advisory only. Deg180/Deg270 are never produced.
CoarseOrientation coarse_orientation(const PageGraphics& page);
CoarseOrientation coarse_orientation(const BinaryImage& img);

}  // namespace gridlock
