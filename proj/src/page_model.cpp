#include "gridlock/page_model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "gridlock/errors.hpp"

namespace gridlock {

using json = nlohmann::ordered_json;

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

json rect_json(const Rect& r) {
  return json::array({round3(r.x0), round3(r.y0), round3(r.x1), round3(r.y1)});
}

Rect rect_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(std::string("PIF: ") + field + ": expected [x0,y0,x1,y1]");
  Rect r{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
         j[3].get<double>()};
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
    throw ParseError(std::string("PIF: ") + field + ": degenerate rect");
  return r;
}

}  // namespace

bool operator==(const PageGraphics& a, const PageGraphics& b) {
  return a.page_index == b.page_index && a.width == b.width &&
         a.height == b.height && a.text_spans == b.text_spans &&
         a.segments == b.segments && a.rects == b.rects &&
         a.source_kind == b.source_kind;
}

std::size_t utf8_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string pif_save(const PageGraphics& page) {
  json doc;
  doc["pif_version"] = 1;
  doc["page_index"] = page.page_index;
  doc["width"] = round3(page.width);
  doc["height"] = round3(page.height);
  doc["source_kind"] =
      page.source_kind == SourceKind::DigitalPdf ? "digital_pdf" : "image";
  json spans = json::array();
  for (const TextSpan& ts : page.text_spans) {
    json s;
    s["bbox"] = rect_json(ts.bbox);
    s["text"] = ts.text;
    if (ts.char_advances) {
      json adv = json::array();
      for (double a : *ts.char_advances) adv.push_back(round3(a));
      s["char_advances"] = std::move(adv);
    }
    spans.push_back(std::move(s));
  }
  doc["text_spans"] = std::move(spans);
  json segs = json::array();
  for (const Segment& sg : page.segments) {
    json s;
    s["o"] = sg.orientation == Orientation::Horizontal ? "h" : "v";
    s["pos"] = round3(sg.position);
    s["lo"] = round3(sg.lo);
    s["hi"] = round3(sg.hi);
    segs.push_back(std::move(s));
  }
  doc["segments"] = std::move(segs);
  json rects = json::array();
  for (const Rect& r : page.rects) rects.push_back(rect_json(r));
  doc["rects"] = std::move(rects);
  return doc.dump();
}

PageGraphics pif_load(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("PIF: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("PIF: top level must be an object");
  if (!doc.contains("pif_version") || !doc["pif_version"].is_number_integer())
    throw ParseError("PIF: pif_version: missing or not an integer");
  if (doc["pif_version"].get<int>() != 1)
    throw ParseError("PIF: pif_version: unknown version " +
                     doc["pif_version"].dump());
  PageGraphics page;
  try {
    page.page_index = doc.at("page_index").get<int>();
    page.width = doc.at("width").get<double>();
    page.height = doc.at("height").get<double>();
    std::string kind = doc.at("source_kind").get<std::string>();
    if (kind == "digital_pdf")
      page.source_kind = SourceKind::DigitalPdf;
    else if (kind == "image")
      page.source_kind = SourceKind::Image;
    else
      throw ParseError("PIF: source_kind: unknown value \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("PIF: header: ") + e.what());
  }
  if (page.page_index < 0) throw ParseError("PIF: page_index: negative");
  if (!(page.width > 0) || !(page.height > 0))
    throw ParseError("PIF: width/height: must be positive");

  for (const json& s : doc.value("text_spans", json::array())) {
    TextSpan ts;
    ts.bbox = rect_from_json(s.at("bbox"), "text_spans.bbox");
    ts.text = s.at("text").get<std::string>();
    if (ts.text.empty()) throw ParseError("PIF: text_spans.text: empty");
    if (s.contains("char_advances")) {
      std::vector<double> adv;
      for (const json& a : s["char_advances"]) adv.push_back(a.get<double>());
      if (adv.size() != utf8_length(ts.text))
        throw ParseError(
            "PIF: text_spans.char_advances: length does not match text");
      ts.char_advances = std::move(adv);
    }
    page.text_spans.push_back(std::move(ts));
  }
  for (const json& s : doc.value("segments", json::array())) {
    Segment sg;
    std::string o = s.at("o").get<std::string>();
    if (o == "h")
      sg.orientation = Orientation::Horizontal;
    else if (o == "v")
      sg.orientation = Orientation::Vertical;
    else
      throw ParseError("PIF: segments.o: expected \"h\" or \"v\"");
    sg.position = s.at("pos").get<double>();
    sg.lo = s.at("lo").get<double>();
    sg.hi = s.at("hi").get<double>();
    if (!(sg.lo < sg.hi)) throw ParseError("PIF: segment interval: lo >= hi");
    page.segments.push_back(sg);
  }
  for (const json& r : doc.value("rects", json::array()))
    page.rects.push_back(rect_from_json(r, "rects"));
  return page;
}

std::vector<Violation> validate(const PageGraphics& page) {
  std::vector<Violation> out;
  auto in_page = [&](double x, double y) {
    return x >= 0 && x <= page.width && y >= 0 && y <= page.height;
  };
  if (page.page_index < 0) out.push_back({"page_index", "must be >= 0"});
  if (!(page.width > 0) || !(page.height > 0))
    out.push_back({"width/height", "must be positive"});
  for (std::size_t i = 0; i < page.text_spans.size(); ++i) {
    const TextSpan& ts = page.text_spans[i];
    std::string f = "text_spans[" + std::to_string(i) + "]";
    if (ts.text.empty()) out.push_back({f + ".text", "must be non-empty"});
    if (!(ts.bbox.x0 < ts.bbox.x1) || !(ts.bbox.y0 < ts.bbox.y1))
      out.push_back({f + ".bbox", "degenerate rect"});
    else if (!in_page(ts.bbox.x0, ts.bbox.y0) || !in_page(ts.bbox.x1, ts.bbox.y1))
      out.push_back({f + ".bbox", "outside page bounds"});
    if (ts.char_advances) {
      if (ts.char_advances->size() != utf8_length(ts.text)) {
        out.push_back({f + ".char_advances", "length must match text"});
      } else {
        double sum = 0;
        for (double a : *ts.char_advances) sum += a;
        double w = ts.bbox.width();
        if (w > 0 && std::abs(sum - w) > 0.10 * w)
          out.push_back({f + ".char_advances", "sum deviates >10% from bbox width"});
      }
    }
  }
  for (std::size_t i = 0; i < page.segments.size(); ++i) {
    const Segment& sg = page.segments[i];
    std::string f = "segments[" + std::to_string(i) + "]";
    if (!(sg.lo < sg.hi)) {
      out.push_back({f, "interval lo >= hi"});
      continue;
    }
    bool ok = sg.orientation == Orientation::Horizontal
                  ? in_page(sg.lo, sg.position) && in_page(sg.hi, sg.position)
                  : in_page(sg.position, sg.lo) && in_page(sg.position, sg.hi);
    if (!ok) out.push_back({f, "outside page bounds"});
  }
  for (std::size_t i = 0; i < page.rects.size(); ++i) {
    const Rect& r = page.rects[i];
    std::string f = "rects[" + std::to_string(i) + "]";
    if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
      out.push_back({f, "degenerate rect"});
    else if (!in_page(r.x0, r.y0) || !in_page(r.x1, r.y1))
      out.push_back({f, "outside page bounds"});
  }
  return out;
}

}  // namespace gridlock
