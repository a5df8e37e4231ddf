#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "gridlock/page_model.hpp"
#include "gridlock/pdf_frontend.hpp"
#include "pdf_internal.hpp"

namespace gridlock::pdf {

namespace {

// Row-vector convention: p' = p * M, M = [a b; c d; e f].
struct Mat {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  static Mat translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }

  Point apply(double x, double y) const {
    return {a * x + c * y + e, b * x + d * y + f};
  }
};

Mat mul(const Mat& m, const Mat& n) {
  return {m.a * n.a + m.b * n.c,        m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c,        m.c * n.b + m.d * n.d,
          m.e * n.a + m.f * n.c + n.e,  m.e * n.b + m.f * n.d + n.f};
}

// UTF-16BE -> UTF-8.
std::string utf16be_to_utf8(const std::string& in) {
  std::string out;
  for (std::size_t i = 0; i + 1 < in.size(); i += 2) {
    std::uint32_t cp = (static_cast<unsigned char>(in[i]) << 8) |
                       static_cast<unsigned char>(in[i + 1]);
    if (cp >= 0xD800 && cp <= 0xDBFF && i + 3 < in.size()) {
      std::uint32_t lo = (static_cast<unsigned char>(in[i + 2]) << 8) |
                         static_cast<unsigned char>(in[i + 3]);
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
        i += 2;
      }
    }
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

constexpr const char* kReplacementChar = "\xEF\xBF\xBD";

struct FontInfo {
  bool two_byte = false;  // Type0 composite font
  int first_char = 0;
  std::vector<double> widths;  // glyph space (1/1000)
  double missing_width = 500;
  std::map<int, std::string> to_unicode;
  bool has_to_unicode = false;
};

void parse_tounicode_cmap(const std::string& cmap, FontInfo& font) {
  Lexer lex(cmap);
  auto hex_code = [](const std::string& s) {
    int v = 0;
    for (unsigned char c : s) v = (v << 8) | c;
    return v;
  };
  std::vector<Lexer::Token> window;
  for (;;) {
    Lexer::Token t;
    try {
      t = lex.next_token();
    } catch (const PdfError&) {
      break;
    }
    if (t.kind == Lexer::Token::Kind::End) break;
    if (t.kind == Lexer::Token::Kind::Keyword && t.text == "beginbfchar") {
      for (;;) {
        auto src = lex.next_token();
        if (src.kind == Lexer::Token::Kind::Keyword && src.text == "endbfchar") break;
        auto dst = lex.next_token();
        if (src.kind != Lexer::Token::Kind::HexString ||
            dst.kind != Lexer::Token::Kind::HexString)
          break;
        font.to_unicode[hex_code(src.text)] = utf16be_to_utf8(dst.text);
      }
    } else if (t.kind == Lexer::Token::Kind::Keyword && t.text == "beginbfrange") {
      for (;;) {
        auto lo = lex.next_token();
        if (lo.kind == Lexer::Token::Kind::Keyword && lo.text == "endbfrange") break;
        auto hi = lex.next_token();
        if (lo.kind != Lexer::Token::Kind::HexString ||
            hi.kind != Lexer::Token::Kind::HexString)
          break;
        auto peek = lex.peek_token();
        if (peek.kind == Lexer::Token::Kind::ArrayOpen) {
          lex.next_token();
          int code = hex_code(lo.text);
          for (;;) {
            auto d = lex.next_token();
            if (d.kind == Lexer::Token::Kind::ArrayClose) break;
            if (d.kind != Lexer::Token::Kind::HexString) break;
            font.to_unicode[code++] = utf16be_to_utf8(d.text);
          }
        } else {
          auto dst = lex.next_token();
          if (dst.kind != Lexer::Token::Kind::HexString) break;
          std::string base = dst.text;
          int lo_c = hex_code(lo.text), hi_c = hex_code(hi.text);
          int base_c = hex_code(base);
          for (int c = lo_c; c <= hi_c && c - lo_c < 65536; ++c) {
            int cp = base_c + (c - lo_c);
            std::string u16;
            u16 += static_cast<char>((cp >> 8) & 0xFF);
            u16 += static_cast<char>(cp & 0xFF);
            font.to_unicode[c] = utf16be_to_utf8(u16);
          }
        }
      }
    }
  }
  font.has_to_unicode = !font.to_unicode.empty();
}

class ContentInterpreter {
 public:
  ContentInterpreter(const Document& doc, const Document::Page& page,
                     ExtractStats* stats, double thin_rule_max)
      : doc_(doc), page_(page), stats_(stats), thin_rule_max_(thin_rule_max) {}

  PageGraphics run(int page_index);

 private:
  struct GState {
    Mat ctm;
  };

  void load_fonts();
  const FontInfo* current_font() const {
    auto it = fonts_.find(font_name_);
    return it == fonts_.end() ? nullptr : &it->second;
  }

  void op_paint(bool stroke, bool fill);
  void show_text(const Object& str);
  void show_tj_array(const Object& arr);
  void flush_pending_span();
  void skip_inline_image(Lexer& lex);

  // Pending text accumulation: consecutive show ops at the same baseline
  // feed one TextSpan per show op.
  struct PendingSpan {
    std::string text;
    std::vector<double> advances;
    double x0 = 0, x1 = 0, y_top = 0, y_bot = 0;  // PDF user space
    bool open = false;
  };

  const Document& doc_;
  const Document::Page& page_;
  ExtractStats* stats_;
  double thin_rule_max_ = 3.0;
  PageGraphics out_;

  GState gs_;
  std::vector<GState> gs_stack_;

  // Path under construction, already CTM-transformed.
  std::vector<std::pair<Point, Point>> path_lines_;
  std::vector<std::array<Point, 4>> path_rects_;  // corners: ll, lr, ur, ul
  Point current_{};
  Point subpath_start_{};
  bool have_current_ = false;

  // Text state.
  bool in_text_ = false;
  Mat tm_, tlm_;
  std::string font_name_;
  double tfs_ = 0, tc_ = 0, tw_ = 0, th_ = 1, tl_ = 0, ts_ = 0;
  int tr_mode_ = 0;
  PendingSpan pending_;

  std::map<std::string, FontInfo> fonts_;
};

void ContentInterpreter::load_fonts() {
  ObjectPtr res = doc_.resolve(page_.resources);
  if (!res->is(Object::Kind::Dict)) return;
  auto it = res->dict.find("Font");
  if (it == res->dict.end()) return;
  ObjectPtr fonts = doc_.resolve(it->second);
  if (!fonts->is(Object::Kind::Dict)) return;
  for (const auto& [name, ref] : fonts->dict) {
    ObjectPtr fd = doc_.resolve(ref);
    if (!fd->is(Object::Kind::Dict)) continue;
    FontInfo info;
    auto get = [&](const char* key) -> ObjectPtr {
      auto i = fd->dict.find(key);
      return i == fd->dict.end() ? make_null() : doc_.resolve(i->second);
    };
    ObjectPtr subtype = get("Subtype");
    if (subtype->is(Object::Kind::Name) && subtype->text == "Type0")
      info.two_byte = true;
    info.first_char = static_cast<int>(get("FirstChar")->num_or(0));
    ObjectPtr widths = get("Widths");
    if (widths->is(Object::Kind::Array)) {
      for (const ObjectPtr& w : widths->array)
        info.widths.push_back(doc_.resolve(w)->num_or(0));
    }
    ObjectPtr desc = get("FontDescriptor");
    if (desc->is(Object::Kind::Dict)) {
      auto mw = desc->dict.find("MissingWidth");
      if (mw != desc->dict.end())
        info.missing_width = doc_.resolve(mw->second)->num_or(500);
    }
    ObjectPtr tu = get("ToUnicode");
    if (tu->is(Object::Kind::Stream))
      parse_tounicode_cmap(doc_.decode_stream(*tu), info);
    fonts_[name] = std::move(info);
  }
}

void ContentInterpreter::flush_pending_span() {
  if (!pending_.open) return;
  pending_.open = false;
  if (pending_.text.empty()) return;
  TextSpan span;
  double x0 = std::min(pending_.x0, pending_.x1);
  double x1 = std::max(pending_.x0, pending_.x1);
  double y0 = std::min(pending_.y_bot, pending_.y_top);
  double y1 = std::max(pending_.y_bot, pending_.y_top);
  if (x1 - x0 < 1e-6 || y1 - y0 < 1e-6) return;
  span.bbox = Rect{x0, y0, x1, y1};
  span.text = pending_.text;
  span.char_advances = pending_.advances;
  out_.text_spans.push_back(std::move(span));
}

void ContentInterpreter::show_text(const Object& str) {
  const FontInfo* font = current_font();
  double tfs = tfs_ > 0 ? tfs_ : 1;
  Mat trm = mul(tm_, gs_.ctm);
  double x_scale = std::sqrt(trm.a * trm.a + trm.b * trm.b);

  pending_ = PendingSpan{};
  pending_.open = true;
  Point p_asc = trm.apply(0, ts_ + 0.8 * tfs);
  Point p_desc = trm.apply(0, ts_ - 0.2 * tfs);
  pending_.x0 = p_desc.x;
  pending_.y_top = p_asc.y;
  pending_.y_bot = p_desc.y;

  const std::string& s = str.text;
  std::size_t step = font && font->two_byte ? 2 : 1;
  for (std::size_t i = 0; i + step <= s.size(); i += step) {
    int code = static_cast<unsigned char>(s[i]);
    if (step == 2)
      code = (code << 8) | static_cast<unsigned char>(s[i + 1]);

    std::string uni;
    if (font && font->has_to_unicode) {
      auto it = font->to_unicode.find(code);
      if (it != font->to_unicode.end()) {
        uni = it->second;
      }
    }
    if (uni.empty()) {
      if (step == 1 && code >= 32 && code <= 126) {
        uni = std::string(1, static_cast<char>(code));
      } else {
        uni = kReplacementChar;
        if (stats_) ++stats_->replacement_chars;
      }
    }

    double w = font ? font->missing_width : 500;
    if (font && code >= font->first_char &&
        code - font->first_char < static_cast<int>(font->widths.size()))
      w = font->widths[static_cast<std::size_t>(code - font->first_char)];

    double tx = (w / 1000.0 * tfs + tc_ + (code == 32 ? tw_ : 0)) * th_;
    tm_ = mul(Mat::translate(tx, 0), tm_);
    pending_.text += uni;
    pending_.advances.push_back(tx * x_scale);
  }
  pending_.x1 = mul(tm_, gs_.ctm).apply(0, 0).x;
  flush_pending_span();
}

void ContentInterpreter::show_tj_array(const Object& arr) {
  // Shown as one logical span; numeric adjustments fold into the previous
  // character's advance.
  const FontInfo* font = current_font();
  double tfs = tfs_ > 0 ? tfs_ : 1;
  Mat trm = mul(tm_, gs_.ctm);

  pending_ = PendingSpan{};
  pending_.open = true;
  Point p_asc = trm.apply(0, ts_ + 0.8 * tfs);
  Point p_desc = trm.apply(0, ts_ - 0.2 * tfs);
  pending_.x0 = p_desc.x;
  pending_.y_top = p_asc.y;
  pending_.y_bot = p_desc.y;

  for (const ObjectPtr& e : arr.array) {
    if (e->is(Object::Kind::Number)) {
      double tx = -e->number / 1000.0 * tfs * th_;
      Mat before = mul(tm_, gs_.ctm);
      tm_ = mul(Mat::translate(tx, 0), tm_);
      Mat after = mul(tm_, gs_.ctm);
      double shift = after.apply(0, 0).x - before.apply(0, 0).x;
      if (!pending_.advances.empty())
        pending_.advances.back() += shift;
      else
        pending_.x0 += shift;
    } else if (e->is(Object::Kind::String)) {
      const std::string& s = e->text;
      std::size_t step = font && font->two_byte ? 2 : 1;
      Mat cur = mul(tm_, gs_.ctm);
      double x_scale = std::sqrt(cur.a * cur.a + cur.b * cur.b);
      for (std::size_t i = 0; i + step <= s.size(); i += step) {
        int code = static_cast<unsigned char>(s[i]);
        if (step == 2) code = (code << 8) | static_cast<unsigned char>(s[i + 1]);
        std::string uni;
        if (font && font->has_to_unicode) {
          auto it = font->to_unicode.find(code);
          if (it != font->to_unicode.end()) uni = it->second;
        }
        if (uni.empty()) {
          if (step == 1 && code >= 32 && code <= 126) {
            uni = std::string(1, static_cast<char>(code));
          } else {
            uni = kReplacementChar;
            if (stats_) ++stats_->replacement_chars;
          }
        }
        double w = font ? font->missing_width : 500;
        if (font && code >= font->first_char &&
            code - font->first_char < static_cast<int>(font->widths.size()))
          w = font->widths[static_cast<std::size_t>(code - font->first_char)];
        double tx = (w / 1000.0 * tfs + tc_ + (code == 32 ? tw_ : 0)) * th_;
        tm_ = mul(Mat::translate(tx, 0), tm_);
        pending_.text += uni;
        pending_.advances.push_back(tx * x_scale);
      }
    }
  }
  pending_.x1 = mul(tm_, gs_.ctm).apply(0, 0).x;
  flush_pending_span();
}

void ContentInterpreter::op_paint(bool stroke, bool fill) {
  const double kThin = thin_rule_max_;
  auto add_segment = [&](const Point& p, const Point& q) {
    double dx = std::abs(p.x - q.x), dy = std::abs(p.y - q.y);
    if (dx < 1e-6 && dy < 1e-6) return;
    Segment s;
    if (dy <= 0.5 && dx > dy) {
      s.orientation = Orientation::Horizontal;
      s.position = (p.y + q.y) / 2;
      s.lo = std::min(p.x, q.x);
      s.hi = std::max(p.x, q.x);
    } else if (dx <= 0.5 && dy > dx) {
      s.orientation = Orientation::Vertical;
      s.position = (p.x + q.x) / 2;
      s.lo = std::min(p.y, q.y);
      s.hi = std::max(p.y, q.y);
    } else {
      return;  // not axis-aligned; table rules are straight
    }
    out_.segments.push_back(s);
  };

  if (stroke) {
    for (const auto& [p, q] : path_lines_) add_segment(p, q);
    for (const auto& corners : path_rects_) {
      add_segment(corners[0], corners[1]);
      add_segment(corners[1], corners[2]);
      add_segment(corners[2], corners[3]);
      add_segment(corners[3], corners[0]);
    }
  }
  if (fill) {
    for (const auto& corners : path_rects_) {
      double xs[4] = {corners[0].x, corners[1].x, corners[2].x, corners[3].x};
      double ys[4] = {corners[0].y, corners[1].y, corners[2].y, corners[3].y};
      Rect r{*std::min_element(xs, xs + 4), *std::min_element(ys, ys + 4),
             *std::max_element(xs, xs + 4), *std::max_element(ys, ys + 4)};
      double w = r.width(), h = r.height();
      if (w < 1e-6 && h < 1e-6) continue;
      if (h < kThin && w >= h) {
        Segment s;
        s.orientation = Orientation::Horizontal;
        s.position = r.cy();
        s.lo = r.x0;
        s.hi = r.x1;
        out_.segments.push_back(s);
      } else if (w < kThin) {
        Segment s;
        s.orientation = Orientation::Vertical;
        s.position = r.cx();
        s.lo = r.y0;
        s.hi = r.y1;
        out_.segments.push_back(s);
      } else if (!stroke) {
        out_.rects.push_back(r);
      }
    }
  }
  path_lines_.clear();
  path_rects_.clear();
  have_current_ = false;
}

void ContentInterpreter::skip_inline_image(Lexer& lex) {
  // BI <dict entries> ID <binary> EI
  const std::string& data = lex.data();
  std::size_t id = data.find("ID", lex.pos());
  if (id == std::string::npos) {
    lex.seek(data.size());
    return;
  }
  std::size_t p = id + 3;  // skip "ID" + 1 whitespace byte
  while (p + 1 < data.size()) {
    if (data[p] == 'E' && data[p + 1] == 'I' &&
        (p + 2 >= data.size() || data[p + 2] == ' ' || data[p + 2] == '\n' ||
         data[p + 2] == '\r' || data[p + 2] == '\t')) {
      bool ws_before = p > 0 && (data[p - 1] == ' ' || data[p - 1] == '\n' ||
                                 data[p - 1] == '\r' || data[p - 1] == '\t');
      if (ws_before) {
        lex.seek(p + 2);
        if (stats_) ++stats_->skipped_inline_images;
        return;
      }
    }
    ++p;
  }
  lex.seek(data.size());
  if (stats_) ++stats_->skipped_inline_images;
}

PageGraphics ContentInterpreter::run(int page_index) {
  load_fonts();
  out_.page_index = page_index;
  out_.width = page_.media_box.width();
  out_.height = page_.media_box.height();
  out_.source_kind = SourceKind::DigitalPdf;

  Lexer lex(page_.content);
  std::vector<ObjectPtr> operands;
  auto pop_num = [&](std::size_t from_back) -> double {
    std::size_t n = operands.size();
    return from_back < n ? operands[n - 1 - from_back]->num_or(0) : 0;
  };

  for (;;) {
    Lexer::Token t;
    std::size_t save = lex.pos();
    try {
      t = lex.next_token();
    } catch (const PdfError&) {
      break;  // unparseable byte; per PDF semantics skip the rest
    }
    if (t.kind == Lexer::Token::Kind::End) break;

    if (t.kind != Lexer::Token::Kind::Keyword) {
      lex.seek(save);
      ObjectPtr obj;
      try {
        obj = lex.parse_object();
      } catch (const PdfError&) {
        lex.seek(save);
        lex.next_token();
        continue;
      }
      operands.push_back(obj);
      continue;
    }

    const std::string& op = t.text;
    if (op == "q") {
      gs_stack_.push_back(gs_);
    } else if (op == "Q") {
      if (!gs_stack_.empty()) {
        gs_ = gs_stack_.back();
        gs_stack_.pop_back();
      }
    } else if (op == "cm") {
      Mat m{pop_num(5), pop_num(4), pop_num(3), pop_num(2), pop_num(1), pop_num(0)};
      gs_.ctm = mul(m, gs_.ctm);
    } else if (op == "m") {
      current_ = gs_.ctm.apply(pop_num(1), pop_num(0));
      subpath_start_ = current_;
      have_current_ = true;
    } else if (op == "l") {
      Point p = gs_.ctm.apply(pop_num(1), pop_num(0));
      if (have_current_) path_lines_.push_back({current_, p});
      current_ = p;
      have_current_ = true;
    } else if (op == "h") {
      if (have_current_) {
        path_lines_.push_back({current_, subpath_start_});
        current_ = subpath_start_;
      }
    } else if (op == "re") {
      double x = pop_num(3), y = pop_num(2), w = pop_num(1), h = pop_num(0);
      std::array<Point, 4> corners = {
          gs_.ctm.apply(x, y), gs_.ctm.apply(x + w, y),
          gs_.ctm.apply(x + w, y + h), gs_.ctm.apply(x, y + h)};
      path_rects_.push_back(corners);
      current_ = corners[0];
      subpath_start_ = corners[0];
      have_current_ = true;
    } else if (op == "c" || op == "v" || op == "y") {
      // Curves carry no table rules; just advance the current point.
      current_ = gs_.ctm.apply(pop_num(1), pop_num(0));
    } else if (op == "S" || op == "s") {
      if (op == "s" && have_current_) path_lines_.push_back({current_, subpath_start_});
      op_paint(true, false);
    } else if (op == "f" || op == "F" || op == "f*") {
      op_paint(false, true);
    } else if (op == "B" || op == "B*" || op == "b" || op == "b*") {
      op_paint(true, true);
    } else if (op == "n") {
      path_lines_.clear();
      path_rects_.clear();
      have_current_ = false;
    } else if (op == "W" || op == "W*") {
      // Clipping is not tracked.
    } else if (op == "BT") {
      in_text_ = true;
      tm_ = Mat{};
      tlm_ = Mat{};
    } else if (op == "ET") {
      in_text_ = false;
    } else if (op == "Tf") {
      tfs_ = pop_num(0);
      if (operands.size() >= 2 && operands[operands.size() - 2]->is(Object::Kind::Name))
        font_name_ = operands[operands.size() - 2]->text;
    } else if (op == "Td") {
      tlm_ = mul(Mat::translate(pop_num(1), pop_num(0)), tlm_);
      tm_ = tlm_;
    } else if (op == "TD") {
      tl_ = -pop_num(0);
      tlm_ = mul(Mat::translate(pop_num(1), pop_num(0)), tlm_);
      tm_ = tlm_;
    } else if (op == "Tm") {
      tlm_ = Mat{pop_num(5), pop_num(4), pop_num(3), pop_num(2), pop_num(1), pop_num(0)};
      tm_ = tlm_;
    } else if (op == "T*") {
      tlm_ = mul(Mat::translate(0, -tl_), tlm_);
      tm_ = tlm_;
    } else if (op == "TL") {
      tl_ = pop_num(0);
    } else if (op == "Tc") {
      tc_ = pop_num(0);
    } else if (op == "Tw") {
      tw_ = pop_num(0);
    } else if (op == "Tz") {
      th_ = pop_num(0) / 100.0;
    } else if (op == "Ts") {
      ts_ = pop_num(0);
    } else if (op == "Tr") {
      tr_mode_ = static_cast<int>(pop_num(0));
    } else if (op == "Tj") {
      if (!operands.empty() && operands.back()->is(Object::Kind::String) && tr_mode_ != 3)
        show_text(*operands.back());
    } else if (op == "'") {
      tlm_ = mul(Mat::translate(0, -tl_), tlm_);
      tm_ = tlm_;
      if (!operands.empty() && operands.back()->is(Object::Kind::String) && tr_mode_ != 3)
        show_text(*operands.back());
    } else if (op == "\"") {
      tw_ = pop_num(2);
      tc_ = pop_num(1);
      tlm_ = mul(Mat::translate(0, -tl_), tlm_);
      tm_ = tlm_;
      if (!operands.empty() && operands.back()->is(Object::Kind::String) && tr_mode_ != 3)
        show_text(*operands.back());
    } else if (op == "TJ") {
      if (!operands.empty() && operands.back()->is(Object::Kind::Array) && tr_mode_ != 3)
        show_tj_array(*operands.back());
    } else if (op == "BI") {
      skip_inline_image(lex);
    }
    // Unknown operators fall through; their operands are discarded below.
    operands.clear();
  }

  // Flip into the top-left convention and clip to the media box.
  const Rect& mb = page_.media_box;
  double H = mb.height();
  auto flip_x = [&](double x) { return x - mb.x0; };
  auto flip_y = [&](double y) { return H - (y - mb.y0); };

  PageGraphics page = std::move(out_);
  std::vector<Segment> segs;
  for (Segment s : page.segments) {
    if (s.orientation == Orientation::Horizontal) {
      s.position = flip_y(s.position);
      s.lo = flip_x(s.lo);
      s.hi = flip_x(s.hi);
      s.lo = std::clamp(s.lo, 0.0, page.width);
      s.hi = std::clamp(s.hi, 0.0, page.width);
      if (s.position < 0 || s.position > page.height || !(s.lo < s.hi)) continue;
    } else {
      double a = flip_y(s.hi), b = flip_y(s.lo);
      s.lo = std::min(a, b);
      s.hi = std::max(a, b);
      s.position = flip_x(s.position);
      s.lo = std::clamp(s.lo, 0.0, page.height);
      s.hi = std::clamp(s.hi, 0.0, page.height);
      if (s.position < 0 || s.position > page.width || !(s.lo < s.hi)) continue;
    }
    segs.push_back(s);
  }
  page.segments = std::move(segs);

  std::vector<Rect> rects;
  for (const Rect& r : page.rects) {
    Rect f{flip_x(r.x0), flip_y(r.y1), flip_x(r.x1), flip_y(r.y0)};
    f.x0 = std::clamp(f.x0, 0.0, page.width);
    f.x1 = std::clamp(f.x1, 0.0, page.width);
    f.y0 = std::clamp(f.y0, 0.0, page.height);
    f.y1 = std::clamp(f.y1, 0.0, page.height);
    if (f.x0 < f.x1 && f.y0 < f.y1) rects.push_back(f);
  }
  page.rects = std::move(rects);

  std::vector<TextSpan> spans;
  for (TextSpan ts : page.text_spans) {
    Rect f{flip_x(ts.bbox.x0), flip_y(ts.bbox.y1), flip_x(ts.bbox.x1), flip_y(ts.bbox.y0)};
    f.x0 = std::clamp(f.x0, 0.0, page.width);
    f.x1 = std::clamp(f.x1, 0.0, page.width);
    f.y0 = std::clamp(f.y0, 0.0, page.height);
    f.y1 = std::clamp(f.y1, 0.0, page.height);
    if (!(f.x0 < f.x1 && f.y0 < f.y1)) continue;
    ts.bbox = f;
    spans.push_back(std::move(ts));
  }
  page.text_spans = std::move(spans);
  return page;
}

}  // namespace

PageGraphics extract_page_impl(const Document& doc, int page_index, ExtractStats* stats,
                               double thin_rule_max) {
  ContentInterpreter interp(doc, doc.page(page_index), stats, thin_rule_max);
  return interp.run(page_index);
}

}  // namespace gridlock::pdf
