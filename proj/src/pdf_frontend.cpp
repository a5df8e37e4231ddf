#include "gridlock/pdf_frontend.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include <unistd.h>

#include "pdf_internal.hpp"

namespace gridlock {

PdfDocument::PdfDocument() = default;
PdfDocument::~PdfDocument() = default;
PdfDocument::PdfDocument(PdfDocument&&) noexcept = default;
PdfDocument& PdfDocument::operator=(PdfDocument&&) noexcept = default;

int PdfDocument::page_count() const { return impl_->page_count(); }

Rect PdfDocument::media_box(int page) const {
  if (page < 0 || page >= impl_->page_count())
    throw InvalidInputError("media_box: page index out of range");
  return impl_->page(page).media_box;
}

PageGraphics PdfDocument::extract_page(int page, ExtractStats* stats,
                                       double thin_rule_max) const {
  if (page < 0 || page >= impl_->page_count())
    throw InvalidInputError("extract_page: page index out of range");
  return pdf::extract_page_impl(*impl_, page, stats, thin_rule_max);
}

PdfDocument open_pdf(const std::string& bytes) {
  PdfDocument doc;
  doc.impl_ = std::make_unique<pdf::Document>(bytes);
  return doc;
}

RasterizerConfig default_rasterizer() {
  RasterizerConfig cfg;
  if (const char* env = std::getenv("GRIDLOCK_RASTERIZER")) {
    cfg.command_template = env;
  } else {
    cfg.command_template =
        "gs -q -dNOPAUSE -dBATCH -sDEVICE=pnggray -r{dpi} "
        "-dFirstPage={page} -dLastPage={page} -sOutputFile={output} {input}";
  }
  return cfg;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string substitute(const std::string& tmpl, const std::string& key,
                       const std::string& value) {
  std::string out = tmpl;
  std::size_t pos = 0;
  while ((pos = out.find(key, pos)) != std::string::npos) {
    out.replace(pos, key.size(), value);
    pos += value.size();
  }
  return out;
}

}  // namespace

RasterPage rasterize_page(const std::string& pdf_path, int page,
                          const RasterizerConfig& cfg) {
  for (const char* ph : {"{input}", "{page}", "{dpi}", "{output}"}) {
    if (cfg.command_template.find(ph) == std::string::npos)
      throw ConfigError(std::string("rasterizer template missing placeholder ") + ph);
  }
  namespace fs = std::filesystem;
  fs::path out_path = fs::temp_directory_path() /
                      ("gridlock_raster_" + std::to_string(::getpid()) + "_" +
                       std::to_string(page) + ".png");

  std::string cmd = cfg.command_template;
  cmd = substitute(cmd, "{input}", shell_quote(pdf_path));
  cmd = substitute(cmd, "{page}", std::to_string(page + 1));  // tools are 1-based
  cmd = substitute(cmd, "{dpi}", std::to_string(static_cast<int>(cfg.dpi)));
  cmd = substitute(cmd, "{output}", shell_quote(out_path.string()));

  std::string diagnostics;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw ExternalToolError("rasterizer: failed to launch", cmd);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    diagnostics.append(buf.data(), n);
  int status = pclose(pipe);
  if (status != 0) {
    std::error_code ec;
    fs::remove(out_path, ec);
    throw ExternalToolError("rasterizer exited with status " + std::to_string(status),
                            diagnostics);
  }
  if (!fs::exists(out_path))
    throw ExternalToolError("rasterizer produced no output file", diagnostics);
  RasterPage img;
  try {
    img = load_image(out_path.string(), cfg.dpi);
  } catch (const Error& e) {
    std::error_code ec;
    fs::remove(out_path, ec);
    throw ExternalToolError(std::string("rasterizer output unreadable: ") + e.what(),
                            diagnostics);
  }
  std::error_code ec;
  fs::remove(out_path, ec);
  return img;
}

}  // namespace gridlock
