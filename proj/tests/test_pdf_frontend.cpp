#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gridlock/errors.hpp"
#include "gridlock/pdf_frontend.hpp"
#include "helpers.hpp"

using namespace gridlock;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& bytes) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return p;
}

}  // namespace

TEST_CASE("stroked rectangle becomes four rule segments, y flipped") {
  PdfDocument doc = open_pdf(testutil::make_pdf("0 0 100 50 re S"));
  REQUIRE(doc.page_count() == 1);
  CHECK(doc.media_box(0) == Rect{0, 0, 200, 200});
  PageGraphics p = doc.extract_page(0);
  CHECK(p.width == 200);
  CHECK(p.height == 200);
  CHECK(p.source_kind == SourceKind::DigitalPdf);
  CHECK(p.text_spans.empty());
  CHECK(p.rects.empty());
  REQUIRE(p.segments.size() == 4);
  int nh = 0, nv = 0;
  for (const Segment& s : p.segments) {
    if (s.orientation == Orientation::Horizontal) {
      ++nh;
      CHECK((s.position == doctest::Approx(150) || s.position == doctest::Approx(200)));
      CHECK(s.lo == doctest::Approx(0));
      CHECK(s.hi == doctest::Approx(100));
    } else {
      ++nv;
      CHECK((s.position == doctest::Approx(0) || s.position == doctest::Approx(100)));
      CHECK(s.lo == doctest::Approx(150));
      CHECK(s.hi == doctest::Approx(200));
    }
  }
  CHECK(nh == 2);
  CHECK(nv == 2);
}

TEST_CASE("positioned text becomes a span with plausible metrics") {
  PdfDocument doc =
      open_pdf(testutil::make_pdf("BT /F1 12 Tf 10 20 Td (Hi) Tj ET", 200, 200, true));
  PageGraphics p = doc.extract_page(0);
  REQUIRE(p.text_spans.size() == 1);
  const TextSpan& ts = p.text_spans[0];
  CHECK(ts.text == "Hi");
  CHECK(ts.bbox.x0 == doctest::Approx(10));
  // Two glyphs at 600/1000 em of 12pt.
  CHECK(ts.bbox.x1 == doctest::Approx(10 + 2 * 7.2));
  CHECK(ts.bbox.height() == doctest::Approx(12).epsilon(0.2));
  // Baseline at pdf y=20 lands near the page bottom after the flip.
  CHECK(ts.bbox.y1 == doctest::Approx(200 - 20 + 2.4));
  REQUIRE(ts.char_advances.has_value());
  CHECK(ts.char_advances->size() == 2);
  CHECK((*ts.char_advances)[0] == doctest::Approx(7.2));
}

TEST_CASE("an empty content stream gives an empty page of the right size") {
  PdfDocument doc = open_pdf(testutil::make_pdf(""));
  PageGraphics p = doc.extract_page(0);
  CHECK(p.width == 200);
  CHECK(p.height == 200);
  CHECK(p.text_spans.empty());
  CHECK(p.segments.empty());
  CHECK(p.rects.empty());
}

TEST_CASE("filled thin rectangles become centerline rules, thick ones rects") {
  PdfDocument doc = open_pdf(testutil::make_pdf("20 100 120 2 re f 20 20 50 40 re f"));
  PageGraphics p = doc.extract_page(0);
  REQUIRE(p.segments.size() == 1);
  CHECK(p.segments[0].orientation == Orientation::Horizontal);
  CHECK(p.segments[0].position == doctest::Approx(200 - 101));
  CHECK(p.segments[0].lo == doctest::Approx(20));
  CHECK(p.segments[0].hi == doctest::Approx(140));
  REQUIRE(p.rects.size() == 1);
  CHECK(p.rects[0] == Rect{20, 200 - 60, 70, 200 - 20});
}

TEST_CASE("malformed and encrypted documents are rejected") {
  CHECK_THROWS_AS(open_pdf("not a pdf at all"), PdfError);
  std::string pdf = testutil::make_pdf("");
  CHECK_THROWS_AS(open_pdf(pdf.substr(0, pdf.size() / 2)), PdfError);
  std::string enc = pdf;
  auto pos = enc.find("/Root 1 0 R");
  REQUIRE(pos != std::string::npos);
  enc.replace(pos, 11, "/Root 1 0 R /Encrypt 99 0 R");
  // Offsets unchanged: the trailer sits after all objects.
  CHECK_THROWS_AS(open_pdf(enc), PdfEncryptionError);
}

TEST_CASE("page index bounds") {
  PdfDocument doc = open_pdf(testutil::make_pdf(""));
  CHECK_THROWS_AS(doc.extract_page(1), InvalidInputError);
  CHECK_THROWS_AS(doc.media_box(-1), InvalidInputError);
}

TEST_CASE("inline images are skipped and counted") {
  PdfDocument doc = open_pdf(
      testutil::make_pdf("BI /W 1 /H 1 /BPC 8 /CS /G ID x EI\n0 0 100 50 re S"));
  ExtractStats stats;
  PageGraphics p = doc.extract_page(0, &stats);
  CHECK(stats.skipped_inline_images == 1);
  CHECK(p.segments.size() == 4);  // the rect after the image still parses
}

TEST_CASE("rasterize_page validates the template before running") {
  RasterizerConfig cfg;
  cfg.command_template = "convert {input} {output}";  // missing {page} and {dpi}
  CHECK_THROWS_AS(rasterize_page("in.pdf", 0, cfg), ConfigError);
}

TEST_CASE("rasterize_page surfaces tool failures with diagnostics") {
  RasterizerConfig cfg;
  cfg.command_template = "echo boom; false # {input} {output} {page} {dpi}";
  try {
    rasterize_page("in.pdf", 0, cfg);
    FAIL("expected ExternalToolError");
  } catch (const ExternalToolError& e) {
    CHECK(std::string(e.diagnostics()).find("boom") != std::string::npos);
  }
}

TEST_CASE("rasterize_page loads the produced image via a stub tool") {
  RasterPage img;
  img.width_px = 30;
  img.height_px = 20;
  img.pixels.assign(600, 200);
  fs::path pgm = fs::temp_directory_path() / "gridlock_stub_page.pgm";
  save_pgm(img, pgm.string());

  RasterizerConfig cfg;
  cfg.dpi = 72;
  cfg.command_template = "cp " + pgm.string() + " {output} # {input} {page} {dpi}";
  RasterPage got = rasterize_page("whatever.pdf", 3, cfg);
  CHECK(got.width_px == 30);
  CHECK(got.height_px == 20);
  CHECK(got.dpi == 72);
  CHECK(got.pixels == img.pixels);
  fs::remove(pgm);
}

TEST_CASE("default rasterizer template honors the environment override") {
  setenv("GRIDLOCK_RASTERIZER", "mytool {input} {output} {page} {dpi}", 1);
  CHECK(default_rasterizer().command_template ==
        "mytool {input} {output} {page} {dpi}");
  unsetenv("GRIDLOCK_RASTERIZER");
  CHECK(default_rasterizer().command_template.find("gs ") == 0);
}

TEST_CASE("image decoding round trips through pgm") {
  RasterPage img;
  img.width_px = 5;
  img.height_px = 4;
  img.dpi = 150;
  for (int i = 0; i < 20; ++i) img.pixels.push_back(static_cast<std::uint8_t>(i * 12));
  fs::path p = write_temp("gridlock_roundtrip.pgm", "");
  save_pgm(img, p.string());
  RasterPage back = load_image(p.string(), 150);
  CHECK(back.width_px == 5);
  CHECK(back.height_px == 4);
  CHECK(back.pixels == img.pixels);
  fs::remove(p);

  CHECK_THROWS_AS(decode_image("GIF89a...", 150), ParseError);
  CHECK_THROWS_AS(decode_image("P5 3 3", 150), ParseError);
}
