#pragma once

#include "gridlock/config.hpp"
#include "gridlock/deskew.hpp"
#include "gridlock/emit.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

// Raster half of the pipeline: binarize, optionally deskew (re-binarizing
// the corrected image), then lift rule segments into page units. The
// estimate used for correction comes back through `est` when given.
PageGraphics raster_to_graphics(const RasterPage& img, const Config& cfg,
                                bool do_deskew, SkewEstimate* est = nullptr);

// Core analysis shared by the CLI and the acceptance suite: region
// detection, per-region table extraction, text assignment (digital pages),
// leftover text as paragraphs, all wrapped into a PageOutput.
PageOutput analyze_page(const PageGraphics& page, const Config& cfg);

}  // namespace gridlock
