#pragma once

#include <vector>

#include "gridlock/geometry.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

enum class RegionKind { Wired, Wireless };

struct TableRegion {
  Rect bbox;
  std::vector<std::size_t> h_segments;  // indices into page.segments
  std::vector<std::size_t> v_segments;
  RegionKind kind = RegionKind::Wired;
};

// Group rule segments into candidate table regions. Connected components of
// the segment intersection graph with at least a 2x2 lattice become Wired
// regions; aligned text grids with fewer than two rules are flagged
// Wireless. Regions come back in reading order (top-to-bottom then
// left-to-right). Expects merged/normalized segments.
std::vector<TableRegion> detect_regions(const PageGraphics& page,
                                        const Tolerances& tol);

}  // namespace gridlock
