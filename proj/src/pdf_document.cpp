#include "pdf_internal.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include <zlib.h>

namespace gridlock::pdf {

namespace {

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\0';
}

bool is_delim(char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' ||
         c == '{' || c == '}' || c == '/' || c == '%';
}

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

ObjectPtr make_null() {
  static ObjectPtr null = std::make_shared<Object>();
  return null;
}

void Lexer::skip_ws() {
  while (pos_ < data_.size()) {
    char c = data_[pos_];
    if (is_ws(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

Lexer::Token Lexer::lex_string() {
  // pos_ is at '('.
  Token t;
  t.kind = Token::Kind::String;
  ++pos_;
  int depth = 1;
  std::string out;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '\\') {
      if (pos_ >= data_.size()) break;
      char e = data_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '(': out += '('; break;
        case ')': out += ')'; break;
        case '\\': out += '\\'; break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;  // line continuation
        case '\n': break;
        default:
          if (e >= '0' && e <= '7') {
            int v = e - '0';
            for (int k = 0; k < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                            data_[pos_] <= '7';
                 ++k)
              v = v * 8 + (data_[pos_++] - '0');
            out += static_cast<char>(v);
          } else {
            out += e;
          }
      }
    } else if (c == '(') {
      ++depth;
      out += c;
    } else if (c == ')') {
      if (--depth == 0) break;
      out += c;
    } else {
      out += c;
    }
  }
  t.text = std::move(out);
  return t;
}

Lexer::Token Lexer::lex_hex_or_dict() {
  Token t;
  if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
    pos_ += 2;
    t.kind = Token::Kind::DictOpen;
    return t;
  }
  ++pos_;
  t.kind = Token::Kind::HexString;
  std::string out;
  int hi = -1;
  while (pos_ < data_.size() && data_[pos_] != '>') {
    int v = hex_val(data_[pos_++]);
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out += static_cast<char>(hi * 16 + v);
      hi = -1;
    }
  }
  if (hi >= 0) out += static_cast<char>(hi * 16);
  if (pos_ < data_.size()) ++pos_;
  t.text = std::move(out);
  return t;
}

Lexer::Token Lexer::next_token() {
  skip_ws();
  Token t;
  if (pos_ >= data_.size()) return t;
  char c = data_[pos_];
  if (c == '(') return lex_string();
  if (c == '<') return lex_hex_or_dict();
  if (c == '>') {
    if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
      pos_ += 2;
      t.kind = Token::Kind::DictClose;
      return t;
    }
    ++pos_;
    throw PdfError("pdf: stray '>' at offset " + std::to_string(pos_ - 1));
  }
  if (c == '[') {
    ++pos_;
    t.kind = Token::Kind::ArrayOpen;
    return t;
  }
  if (c == ']') {
    ++pos_;
    t.kind = Token::Kind::ArrayClose;
    return t;
  }
  if (c == '/') {
    ++pos_;
    std::string name;
    while (pos_ < data_.size() && !is_ws(data_[pos_]) && !is_delim(data_[pos_])) {
      char ch = data_[pos_++];
      if (ch == '#' && pos_ + 1 < data_.size()) {
        int a = hex_val(data_[pos_]), b = hex_val(data_[pos_ + 1]);
        if (a >= 0 && b >= 0) {
          ch = static_cast<char>(a * 16 + b);
          pos_ += 2;
        }
      }
      name += ch;
    }
    t.kind = Token::Kind::Name;
    t.text = std::move(name);
    return t;
  }
  if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t start = pos_;
    if (c == '+' || c == '-') ++pos_;
    bool any = false;
    while (pos_ < data_.size() &&
           (std::isdigit(static_cast<unsigned char>(data_[pos_])) || data_[pos_] == '.')) {
      ++pos_;
      any = true;
    }
    if (!any && c == '.') ++pos_;
    t.kind = Token::Kind::Number;
    t.text = data_.substr(start, pos_ - start);
    t.number = std::strtod(t.text.c_str(), nullptr);
    return t;
  }
  if (c == '{' || c == '}') {
    ++pos_;
    t.kind = Token::Kind::Keyword;
    t.text = std::string(1, c);
    return t;
  }
  // Keyword.
  std::size_t start = pos_;
  while (pos_ < data_.size() && !is_ws(data_[pos_]) && !is_delim(data_[pos_])) ++pos_;
  t.kind = Token::Kind::Keyword;
  t.text = data_.substr(start, pos_ - start);
  if (t.text.empty())
    throw PdfError("pdf: unexpected byte at offset " + std::to_string(start));
  return t;
}

Lexer::Token Lexer::peek_token() {
  std::size_t save = pos_;
  Token t = next_token();
  pos_ = save;
  return t;
}

ObjectPtr Lexer::parse_object() {
  Token t = next_token();
  auto obj = std::make_shared<Object>();
  switch (t.kind) {
    case Token::Kind::End:
      throw PdfError("pdf: unexpected end of data");
    case Token::Kind::Number: {
      // Possible "N G R" reference.
      std::size_t save = pos_;
      Token t2 = next_token();
      if (t2.kind == Token::Kind::Number) {
        Token t3 = next_token();
        if (t3.kind == Token::Kind::Keyword && t3.text == "R") {
          obj->kind = Object::Kind::Reference;
          obj->ref = Ref{static_cast<int>(t.number), static_cast<int>(t2.number)};
          return obj;
        }
      }
      pos_ = save;
      obj->kind = Object::Kind::Number;
      obj->number = t.number;
      return obj;
    }
    case Token::Kind::Name:
      obj->kind = Object::Kind::Name;
      obj->text = std::move(t.text);
      return obj;
    case Token::Kind::String:
    case Token::Kind::HexString:
      obj->kind = Object::Kind::String;
      obj->text = std::move(t.text);
      return obj;
    case Token::Kind::ArrayOpen: {
      obj->kind = Object::Kind::Array;
      for (;;) {
        Token p = peek_token();
        if (p.kind == Token::Kind::ArrayClose) {
          next_token();
          break;
        }
        if (p.kind == Token::Kind::End) throw PdfError("pdf: unterminated array");
        obj->array.push_back(parse_object());
      }
      return obj;
    }
    case Token::Kind::DictOpen: {
      obj->kind = Object::Kind::Dict;
      for (;;) {
        Token p = next_token();
        if (p.kind == Token::Kind::DictClose) break;
        if (p.kind != Token::Kind::Name)
          throw PdfError("pdf: dict key must be a name");
        obj->dict[p.text] = parse_object();
      }
      // Stream?
      std::size_t save = pos_;
      Token p = next_token();
      if (p.kind == Token::Kind::Keyword && p.text == "stream") {
        if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
        if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        std::size_t start = pos_;
        std::size_t len = std::string::npos;
        auto it = obj->dict.find("Length");
        if (it != obj->dict.end() && it->second->is(Object::Kind::Number))
          len = static_cast<std::size_t>(it->second->number);
        if (len == std::string::npos || start + len > data_.size()) {
          std::size_t e = data_.find("endstream", start);
          if (e == std::string::npos) throw PdfError("pdf: unterminated stream");
          len = e - start;
          while (len > 0 && (data_[start + len - 1] == '\n' || data_[start + len - 1] == '\r'))
            --len;
        }
        obj->kind = Object::Kind::Stream;
        obj->stream_raw = data_.substr(start, len);
        pos_ = start + len;
        Token e = next_token();
        if (!(e.kind == Token::Kind::Keyword && e.text == "endstream")) {
          std::size_t es = data_.find("endstream", start + len);
          if (es == std::string::npos) throw PdfError("pdf: missing endstream");
          pos_ = es + 9;
        }
      } else {
        pos_ = save;
      }
      return obj;
    }
    case Token::Kind::Keyword: {
      if (t.text == "true" || t.text == "false") {
        obj->kind = Object::Kind::Boolean;
        obj->boolean = t.text == "true";
        return obj;
      }
      if (t.text == "null") return obj;
      throw PdfError("pdf: unexpected keyword \"" + t.text + "\"");
    }
    default:
      throw PdfError("pdf: unexpected token");
  }
}

// ---------------------------------------------------------------------------
// Filters

std::string flate_decode(const std::string& in) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw PdfError("pdf: inflateInit failed");
  std::string out;
  out.resize(std::max<std::size_t>(in.size() * 4, 4096));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  std::size_t written = 0;
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    if (written == out.size()) out.resize(out.size() * 2);
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
    zs.avail_out = static_cast<uInt>(out.size() - written);
    rc = inflate(&zs, Z_NO_FLUSH);
    written = out.size() - zs.avail_out;
    if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;  // truncated but usable
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw PdfError("pdf: FlateDecode error");
    }
  }
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

std::string ascii_hex_decode(const std::string& in) {
  std::string out;
  int hi = -1;
  for (char c : in) {
    if (c == '>') break;
    int v = hex_val(c);
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out += static_cast<char>(hi * 16 + v);
      hi = -1;
    }
  }
  if (hi >= 0) out += static_cast<char>(hi * 16);
  return out;
}

std::string apply_png_predictor(const std::string& in, int predictor, int colors,
                                int bpc, int columns) {
  if (predictor < 10) return in;
  int bpp = std::max(1, colors * bpc / 8);
  std::size_t row_len = static_cast<std::size_t>(columns) * bpp;
  std::string out;
  std::vector<unsigned char> prev(row_len, 0);
  std::size_t pos = 0;
  while (pos + 1 + row_len <= in.size() + row_len && pos < in.size()) {
    int ft = static_cast<unsigned char>(in[pos++]);
    std::vector<unsigned char> row(row_len, 0);
    std::size_t avail = std::min(row_len, in.size() - pos);
    std::memcpy(row.data(), in.data() + pos, avail);
    pos += avail;
    for (std::size_t i = 0; i < row_len; ++i) {
      unsigned char left = i >= static_cast<std::size_t>(bpp) ? row[i - bpp] : 0;
      unsigned char up = prev[i];
      unsigned char ul = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
      switch (ft) {
        case 0: break;
        case 1: row[i] = static_cast<unsigned char>(row[i] + left); break;
        case 2: row[i] = static_cast<unsigned char>(row[i] + up); break;
        case 3: row[i] = static_cast<unsigned char>(row[i] + (left + up) / 2); break;
        case 4: {
          int p = left + up - ul;
          int pa = std::abs(p - left), pb = std::abs(p - up), pc = std::abs(p - ul);
          unsigned char pred = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : ul);
          row[i] = static_cast<unsigned char>(row[i] + pred);
          break;
        }
        default: throw PdfError("pdf: unknown PNG predictor filter type");
      }
    }
    out.append(reinterpret_cast<const char*>(row.data()), row_len);
    prev = row;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Document

Document::Document(std::string bytes) : bytes_(std::move(bytes)) {
  std::size_t hdr = bytes_.find("%PDF-");
  if (hdr == std::string::npos || hdr > 1024)
    throw PdfError("pdf: missing %PDF header");
  parse_xref_chain();
  const Object& trailer = *trailer_;
  if (trailer.dict.count("Encrypt"))
    throw PdfEncryptionError("pdf: encrypted documents are not supported");
  load_pages();
}

void Document::parse_xref_chain() {
  std::size_t sx = bytes_.rfind("startxref");
  if (sx == std::string::npos) throw PdfError("pdf: malformed xref: no startxref");
  Lexer lex(bytes_, sx + 9);
  auto t = lex.next_token();
  if (t.kind != Lexer::Token::Kind::Number)
    throw PdfError("pdf: malformed xref: bad startxref offset");
  parse_xref_table(static_cast<std::size_t>(t.number), 0);
  if (!trailer_) throw PdfError("pdf: malformed xref: no trailer");
}

void Document::parse_xref_table(std::size_t offset, int depth) {
  if (depth > 32) throw PdfError("pdf: malformed xref: /Prev chain too deep");
  if (offset >= bytes_.size()) throw PdfError("pdf: malformed xref: offset out of range");
  Lexer lex(bytes_, offset);
  auto first = lex.peek_token();
  if (first.kind == Lexer::Token::Kind::Keyword && first.text == "xref") {
    lex.next_token();
    for (;;) {
      auto t = lex.peek_token();
      if (t.kind == Lexer::Token::Kind::Keyword && t.text == "trailer") {
        lex.next_token();
        ObjectPtr tr = lex.parse_object();
        if (!tr->is(Object::Kind::Dict)) throw PdfError("pdf: malformed trailer");
        if (!trailer_) trailer_ = tr;
        auto prev = tr->dict.find("Prev");
        if (prev != tr->dict.end() && prev->second->is(Object::Kind::Number))
          parse_xref_table(static_cast<std::size_t>(prev->second->number), depth + 1);
        auto xstm = tr->dict.find("XRefStm");
        if (xstm != tr->dict.end() && xstm->second->is(Object::Kind::Number))
          parse_xref_table(static_cast<std::size_t>(xstm->second->number), depth + 1);
        return;
      }
      if (t.kind != Lexer::Token::Kind::Number)
        throw PdfError("pdf: malformed xref section header");
      int start = static_cast<int>(lex.next_token().number);
      auto ct = lex.next_token();
      if (ct.kind != Lexer::Token::Kind::Number)
        throw PdfError("pdf: malformed xref section header");
      int count = static_cast<int>(ct.number);
      for (int i = 0; i < count; ++i) {
        auto off = lex.next_token();
        auto gen = lex.next_token();
        auto kind = lex.next_token();
        if (off.kind != Lexer::Token::Kind::Number ||
            gen.kind != Lexer::Token::Kind::Number ||
            kind.kind != Lexer::Token::Kind::Keyword)
          throw PdfError("pdf: malformed xref entry");
        if (kind.text == "n" && !xref_.count(start + i))
          xref_[start + i] = {XrefEntry::Kind::Offset,
                              static_cast<std::size_t>(off.number), 0};
      }
    }
  }
  // Otherwise expect an xref stream: "N G obj <<...>> stream".
  auto t1 = lex.next_token();
  auto t2 = lex.next_token();
  auto t3 = lex.next_token();
  if (t1.kind != Lexer::Token::Kind::Number || t2.kind != Lexer::Token::Kind::Number ||
      t3.kind != Lexer::Token::Kind::Keyword || t3.text != "obj")
    throw PdfError("pdf: malformed xref: expected table or xref stream");
  ObjectPtr obj = lex.parse_object();
  if (!obj->is(Object::Kind::Stream)) throw PdfError("pdf: malformed xref stream");
  parse_xref_stream(*obj, depth);
}

void Document::parse_xref_stream(const Object& stream, int depth) {
  auto get = [&](const char* key) -> ObjectPtr {
    auto it = stream.dict.find(key);
    return it == stream.dict.end() ? make_null() : it->second;
  };
  ObjectPtr w = get("W");
  if (!w->is(Object::Kind::Array) || w->array.size() < 3)
    throw PdfError("pdf: malformed xref stream /W");
  int w0 = static_cast<int>(w->array[0]->num_or(0));
  int w1 = static_cast<int>(w->array[1]->num_or(0));
  int w2 = static_cast<int>(w->array[2]->num_or(0));
  std::string data = decode_stream(stream);

  std::vector<std::pair<int, int>> index;
  ObjectPtr idx = get("Index");
  if (idx->is(Object::Kind::Array)) {
    for (std::size_t i = 0; i + 1 < idx->array.size(); i += 2)
      index.push_back({static_cast<int>(idx->array[i]->num_or(0)),
                       static_cast<int>(idx->array[i + 1]->num_or(0))});
  } else {
    index.push_back({0, static_cast<int>(get("Size")->num_or(0))});
  }

  std::size_t pos = 0;
  std::size_t entry_len = static_cast<std::size_t>(w0 + w1 + w2);
  auto read_field = [&](int width) -> std::uint64_t {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
      v = (v << 8) | static_cast<unsigned char>(data[pos++]);
    return v;
  };
  for (auto [start, count] : index) {
    for (int i = 0; i < count; ++i) {
      if (pos + entry_len > data.size())
        throw PdfError("pdf: truncated xref stream data");
      std::uint64_t type = w0 == 0 ? 1 : read_field(w0);
      std::uint64_t f2 = read_field(w1);
      std::uint64_t f3 = read_field(w2);
      int num = start + i;
      if (xref_.count(num)) continue;
      if (type == 1) {
        xref_[num] = {XrefEntry::Kind::Offset, static_cast<std::size_t>(f2), 0};
      } else if (type == 2) {
        xref_[num] = {XrefEntry::Kind::InStream, static_cast<std::size_t>(f3),
                      static_cast<int>(f2)};
      }
    }
  }

  if (!trailer_) {
    auto tr = std::make_shared<Object>();
    tr->kind = Object::Kind::Dict;
    tr->dict = stream.dict;
    trailer_ = tr;
  }
  ObjectPtr prev = get("Prev");
  if (prev->is(Object::Kind::Number))
    parse_xref_table(static_cast<std::size_t>(prev->number), depth + 1);
}

ObjectPtr Document::parse_object_at(std::size_t offset) const {
  if (offset >= bytes_.size()) throw PdfError("pdf: object offset out of range");
  Lexer lex(bytes_, offset);
  auto t1 = lex.next_token();
  auto t2 = lex.next_token();
  auto t3 = lex.next_token();
  if (t1.kind != Lexer::Token::Kind::Number || t2.kind != Lexer::Token::Kind::Number ||
      t3.kind != Lexer::Token::Kind::Keyword || t3.text != "obj")
    throw PdfError("pdf: expected \"N G obj\" at offset " + std::to_string(offset));
  return lex.parse_object();
}

ObjectPtr Document::load_from_object_stream(int stm_num, int index) const {
  ObjectPtr stm = get_object(Ref{stm_num, 0});
  if (!stm->is(Object::Kind::Stream)) throw PdfError("pdf: bad object stream");
  std::string data = decode_stream(*stm);
  int n = static_cast<int>(stm->dict.count("N") ? stm->dict.at("N")->num_or(0) : 0);
  std::size_t first =
      static_cast<std::size_t>(stm->dict.count("First") ? stm->dict.at("First")->num_or(0) : 0);
  Lexer header(data, 0);
  std::size_t obj_off = 0;
  bool found = false;
  for (int i = 0; i < n; ++i) {
    auto num = header.next_token();
    auto off = header.next_token();
    if (num.kind != Lexer::Token::Kind::Number || off.kind != Lexer::Token::Kind::Number)
      throw PdfError("pdf: malformed object stream header");
    if (i == index) {
      obj_off = static_cast<std::size_t>(off.number);
      found = true;
    }
  }
  if (!found) throw PdfError("pdf: object stream index out of range");
  Lexer lex(data, first + obj_off);
  return lex.parse_object();
}

ObjectPtr Document::get_object(const Ref& ref) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto cached = cache_.find(ref.num);
  if (cached != cache_.end()) return cached->second;
  auto it = xref_.find(ref.num);
  if (it == xref_.end()) return make_null();
  ObjectPtr obj;
  if (it->second.kind == XrefEntry::Kind::Offset)
    obj = parse_object_at(it->second.offset);
  else
    obj = load_from_object_stream(it->second.stream_num,
                                  static_cast<int>(it->second.offset));
  cache_[ref.num] = obj;
  return obj;
}

ObjectPtr Document::resolve(const ObjectPtr& obj) const {
  ObjectPtr cur = obj;
  for (int i = 0; i < 32 && cur && cur->is(Object::Kind::Reference); ++i)
    cur = get_object(cur->ref);
  return cur ? cur : make_null();
}

std::string Document::decode_stream(const Object& stream) const {
  std::string data = stream.stream_raw;
  auto filt_it = stream.dict.find("Filter");
  std::vector<std::string> filters;
  if (filt_it != stream.dict.end()) {
    ObjectPtr f = resolve(filt_it->second);
    if (f->is(Object::Kind::Name)) {
      filters.push_back(f->text);
    } else if (f->is(Object::Kind::Array)) {
      for (const ObjectPtr& e : f->array) {
        ObjectPtr r = resolve(e);
        if (r->is(Object::Kind::Name)) filters.push_back(r->text);
      }
    }
  }
  for (const std::string& f : filters) {
    if (f == "FlateDecode" || f == "Fl") {
      data = flate_decode(data);
    } else if (f == "ASCIIHexDecode" || f == "AHx") {
      data = ascii_hex_decode(data);
    } else {
      throw PdfError("pdf: unsupported stream filter /" + f);
    }
  }
  auto parms_it = stream.dict.find("DecodeParms");
  if (parms_it != stream.dict.end()) {
    ObjectPtr p = resolve(parms_it->second);
    if (p->is(Object::Kind::Array) && !p->array.empty()) p = resolve(p->array[0]);
    if (p->is(Object::Kind::Dict)) {
      auto dget = [&](const char* k, int dflt) {
        auto it = p->dict.find(k);
        return it == p->dict.end() ? dflt : static_cast<int>(resolve(it->second)->num_or(dflt));
      };
      int pred = dget("Predictor", 1);
      if (pred > 1)
        data = apply_png_predictor(data, pred, dget("Colors", 1),
                                   dget("BitsPerComponent", 8), dget("Columns", 1));
    }
  }
  return data;
}

void Document::load_pages() {
  ObjectPtr root = resolve(trailer_->dict.count("Root") ? trailer_->dict.at("Root")
                                                        : make_null());
  if (!root->is(Object::Kind::Dict)) throw PdfError("pdf: missing /Root catalog");
  ObjectPtr pages = resolve(root->dict.count("Pages") ? root->dict.at("Pages")
                                                      : make_null());
  if (!pages->is(Object::Kind::Dict)) throw PdfError("pdf: missing /Pages tree");

  struct Inherited {
    ObjectPtr media_box;
    ObjectPtr resources;
  };
  // Iterative DFS over the page tree.
  std::vector<std::pair<ObjectPtr, Inherited>> stack{{pages, {}}};
  int guard = 0;
  while (!stack.empty()) {
    if (++guard > 100000) throw PdfError("pdf: page tree too large or cyclic");
    auto [node, inh] = stack.back();
    stack.pop_back();
    Inherited next = inh;
    if (node->dict.count("MediaBox")) next.media_box = resolve(node->dict.at("MediaBox"));
    if (node->dict.count("Resources")) next.resources = resolve(node->dict.at("Resources"));
    ObjectPtr type = node->dict.count("Type") ? resolve(node->dict.at("Type")) : make_null();
    bool is_leaf = type->is(Object::Kind::Name) ? type->text == "Page"
                                                : !node->dict.count("Kids");
    if (!is_leaf) {
      ObjectPtr kids = resolve(node->dict.count("Kids") ? node->dict.at("Kids")
                                                        : make_null());
      if (!kids->is(Object::Kind::Array)) throw PdfError("pdf: /Pages node without /Kids");
      for (auto it = kids->array.rbegin(); it != kids->array.rend(); ++it)
        stack.push_back({resolve(*it), next});
      continue;
    }
    Page page;
    page.dict = node;
    if (!next.media_box || !next.media_box->is(Object::Kind::Array) ||
        next.media_box->array.size() != 4)
      throw PdfError("pdf: page without /MediaBox");
    double a = resolve(next.media_box->array[0])->num_or(0);
    double b = resolve(next.media_box->array[1])->num_or(0);
    double c = resolve(next.media_box->array[2])->num_or(0);
    double d = resolve(next.media_box->array[3])->num_or(0);
    page.media_box = Rect{std::min(a, c), std::min(b, d), std::max(a, c), std::max(b, d)};
    page.resources = next.resources ? next.resources : make_null();
    ObjectPtr contents = resolve(node->dict.count("Contents") ? node->dict.at("Contents")
                                                              : make_null());
    if (contents->is(Object::Kind::Stream)) {
      page.content = decode_stream(*contents);
    } else if (contents->is(Object::Kind::Array)) {
      for (const ObjectPtr& e : contents->array) {
        ObjectPtr s = resolve(e);
        if (s->is(Object::Kind::Stream)) {
          page.content += decode_stream(*s);
          page.content += '\n';
        }
      }
    }
    pages_.push_back(std::move(page));
  }
  if (pages_.empty()) throw PdfError("pdf: document has no pages");
}

}  // namespace gridlock::pdf
