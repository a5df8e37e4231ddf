#pragma once

#include <memory>
#include <string>

#include "gridlock/geometry.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {

namespace pdf {
class Document;
}

// Extraction result bookkeeping that does not abort the page.
struct ExtractStats {
  int skipped_inline_images = 0;
  int replacement_chars = 0;
};

// A parsed digital PDF: xref resolved, page tree walkable. Supports Flate
// and ASCIIHex filters, classic xref tables and xref/object streams.
// Encrypted documents are rejected at open time.
class PdfDocument {
 public:
  ~PdfDocument();
  PdfDocument(PdfDocument&&) noexcept;
  PdfDocument& operator=(PdfDocument&&) noexcept;

  int page_count() const;
  Rect media_box(int page) const;

  // Interpret the page content stream into PIF primitives. Thread-safe for
  // concurrent calls on distinct or identical pages.
  // thin_rule_max: filled rectangles thinner than this (pt) become rule
  // segments instead of Rects.
  PageGraphics extract_page(int page, ExtractStats* stats = nullptr,
                            double thin_rule_max = 3.0) const;

 private:
  friend PdfDocument open_pdf(const std::string& bytes);
  PdfDocument();
  std::unique_ptr<pdf::Document> impl_;
};

// Parse a PDF from memory. Throws PdfError (malformed xref, unsupported
// filter) or PdfEncryptionError.
PdfDocument open_pdf(const std::string& bytes);

struct RasterizerConfig {
  // Must contain {input}, {page}, {dpi} and {output} placeholders.
  std::string command_template;
  double dpi = 150;
};

// Ghostscript-compatible default; the GRIDLOCK_RASTERIZER environment
// variable or config overrides it.
RasterizerConfig default_rasterizer();

// Run the external rasterizer for one page and load the produced grayscale
// image. Throws ConfigError on a bad template and ExternalToolError with
// captured diagnostics when the tool fails.
RasterPage rasterize_page(const std::string& pdf_path, int page,
                          const RasterizerConfig& cfg);

// Image loading (PNG and PGM) shared by the rasterizer path and the CLI.
RasterPage load_image(const std::string& path, double dpi);
RasterPage decode_image(const std::string& bytes, double dpi);
void save_pgm(const RasterPage& img, const std::string& path);

}  // namespace gridlock
