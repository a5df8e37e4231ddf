#include <doctest.h>

#include "gridlock/errors.hpp"
#include "gridlock/page_model.hpp"
#include "gridlock/synth.hpp"

using namespace gridlock;

namespace {

PageGraphics sample_page() {
  PageGraphics p;
  p.page_index = 2;
  p.width = 200;
  p.height = 100;
  p.source_kind = SourceKind::DigitalPdf;
  TextSpan ts;
  ts.bbox = Rect{10, 20, 40, 30};
  ts.text = "abc";
  ts.char_advances = std::vector<double>{10, 10, 10};
  p.text_spans.push_back(ts);
  p.segments.push_back({Orientation::Horizontal, 50, 10, 150});
  p.segments.push_back({Orientation::Vertical, 80, 40, 90});
  p.rects.push_back(Rect{5, 5, 25, 15});
  return p;
}

}  // namespace

TEST_CASE("utf8_length counts code points") {
  CHECK(utf8_length("") == 0);
  CHECK(utf8_length("abc") == 3);
  CHECK(utf8_length("\xC3\xA9") == 1);          // e with acute
  CHECK(utf8_length("a\xE2\x82\xACz") == 3);    // a, euro sign, z
  CHECK(utf8_length("\xF0\x9F\x99\x82") == 1);  // one emoji
}

TEST_CASE("pif round trip preserves the page") {
  PageGraphics p = sample_page();
  PageGraphics q = pif_load(pif_save(p));
  CHECK(p == q);
}

TEST_CASE("pif_save is deterministic and stable under reload") {
  PageGraphics p = sample_page();
  std::string a = pif_save(p);
  std::string b = pif_save(p);
  CHECK(a == b);
  CHECK(pif_save(pif_load(a)) == a);
}

TEST_CASE("pif_save rounds floats to 3 decimals") {
  PageGraphics p = sample_page();
  p.segments[0].position = 50.123456;
  std::string s = pif_save(p);
  CHECK(s.find("50.123") != std::string::npos);
  CHECK(s.find("50.1234") == std::string::npos);
}

TEST_CASE("pif_load rejects bad documents with named fields") {
  CHECK_THROWS_AS(pif_load("not json"), ParseError);
  CHECK_THROWS_AS(pif_load("[]"), ParseError);
  CHECK_THROWS_WITH_AS(
      pif_load(R"({"pif_version":9,"page_index":0,"width":10,"height":10})"),
      doctest::Contains("pif_version"), ParseError);
  CHECK_THROWS_WITH_AS(
      pif_load(R"({"pif_version":1,"page_index":0,"width":10,"height":10,)"
               R"("source_kind":"image",)"
               R"("segments":[{"o":"h","pos":5,"lo":8,"hi":8}]})"),
      doctest::Contains("lo >= hi"), ParseError);
  CHECK_THROWS_WITH_AS(
      pif_load(R"({"pif_version":1,"page_index":0,"width":10,"height":10,)"
               R"("source_kind":"image",)"
               R"("text_spans":[{"bbox":[0,0,5,5],"text":""}]})"),
      doctest::Contains("text"), ParseError);
  CHECK_THROWS_WITH_AS(
      pif_load(R"({"pif_version":1,"page_index":0,"width":10,"height":10,)"
               R"("source_kind":"image",)"
               R"("text_spans":[{"bbox":[0,0,5,5],"text":"ab","char_advances":[5]}]})"),
      doctest::Contains("char_advances"), ParseError);
  CHECK_THROWS_AS(
      pif_load(R"({"pif_version":1,"page_index":0,"width":-3,"height":10})"),
      ParseError);
}

TEST_CASE("validate flags violations and passes good pages") {
  CHECK(validate(sample_page()).empty());

  PageGraphics p = sample_page();
  p.text_spans[0].text = "";
  p.text_spans[0].char_advances.reset();
  p.segments[0].hi = 9999;
  p.rects[0] = Rect{5, 5, 5, 15};
  auto v = validate(p);
  REQUIRE(v.size() == 3);
  CHECK(v[0].field == "text_spans[0].text");
  CHECK(v[1].field == "segments[0]");
  CHECK(v[2].field == "rects[0]");

  // Advance sum off by more than 10% of the bbox width.
  PageGraphics q = sample_page();
  q.text_spans[0].char_advances = std::vector<double>{5, 5, 5};
  auto w = validate(q);
  REQUIRE(w.size() == 1);
  CHECK(w[0].field == "text_spans[0].char_advances");
}

TEST_CASE("synth pages validate cleanly") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 123ULL}) {
    SynthParams sp;
    sp.seed = seed;
    CHECK(validate(gen_table(sp).page).empty());
  }
}
