#pragma once

// Internal PDF object model, lexer, and document machinery. Not installed.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gridlock/errors.hpp"
#include "gridlock/geometry.hpp"
#include "gridlock/page_model.hpp"

namespace gridlock {
struct ExtractStats;
}

namespace gridlock::pdf {

struct Object;
using ObjectPtr = std::shared_ptr<const Object>;

struct Ref {
  int num = 0;
  int gen = 0;
  bool operator<(const Ref& o) const {
    return num != o.num ? num < o.num : gen < o.gen;
  }
};

struct Object {
  enum class Kind { Null, Boolean, Number, String, Name, Array, Dict, Stream, Reference };
  Kind kind = Kind::Null;
  bool boolean = false;
  double number = 0;
  std::string text;  // String payload or Name (without '/')
  std::vector<ObjectPtr> array;
  std::map<std::string, ObjectPtr> dict;  // also the stream dict
  std::string stream_raw;                 // undecoded stream bytes
  Ref ref;

  bool is(Kind k) const { return kind == k; }
  double num_or(double fallback) const {
    return kind == Kind::Number ? number : fallback;
  }
};

ObjectPtr make_null();

// Tokenizing recursive-descent parser for PDF object syntax. Shared by the
// file parser and the content-stream interpreter.
class Lexer {
 public:
  Lexer(const std::string& data, std::size_t pos = 0) : data_(data), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  bool at_end() const { return pos_ >= data_.size(); }

  void skip_ws();
  // Next token as raw text: a delimiter-bounded keyword, number, name,
  // string, or structural token ("<<", ">>", "[", "]"). Strings and names
  // come back decoded with a marker kind.
  struct Token {
    enum class Kind { End, Number, Name, String, HexString, Keyword, ArrayOpen,
                      ArrayClose, DictOpen, DictClose };
    Kind kind = Kind::End;
    std::string text;
    double number = 0;
  };
  Token next_token();
  Token peek_token();

  // Full object (resolving "N G R" reference triples from number lookahead).
  ObjectPtr parse_object();

  const std::string& data() const { return data_; }

 private:
  Token lex_string();
  Token lex_hex_or_dict();
  const std::string& data_;
  std::size_t pos_ = 0;
};

// Stream filters.
std::string flate_decode(const std::string& in);
std::string ascii_hex_decode(const std::string& in);
std::string apply_png_predictor(const std::string& in, int predictor, int colors,
                                int bpc, int columns);

class Document {
 public:
  explicit Document(std::string bytes);

  int page_count() const { return static_cast<int>(pages_.size()); }

  struct Page {
    ObjectPtr dict;
    Rect media_box;          // raw PDF user space (y up)
    ObjectPtr resources;     // resolved dict or null
    std::string content;     // decoded, concatenated content streams
  };
  const Page& page(int i) const { return pages_.at(static_cast<std::size_t>(i)); }

  // Resolve indirect references (possibly chained).
  ObjectPtr resolve(const ObjectPtr& obj) const;
  ObjectPtr get_object(const Ref& ref) const;
  std::string decode_stream(const Object& stream) const;

 private:
  void parse_xref_chain();
  void parse_xref_table(std::size_t offset, int depth);
  void parse_xref_stream(const Object& stream, int depth);
  void load_pages();
  ObjectPtr parse_object_at(std::size_t offset) const;
  ObjectPtr load_from_object_stream(int stm_num, int index) const;

  std::string bytes_;
  struct XrefEntry {
    enum class Kind { Offset, InStream } kind = Kind::Offset;
    std::size_t offset = 0;  // file offset, or index within object stream
    int stream_num = 0;
  };
  std::map<int, XrefEntry> xref_;
  ObjectPtr trailer_;
  std::vector<Page> pages_;
  mutable std::map<int, ObjectPtr> cache_;
  // Recursive: object-stream loads resolve the carrier stream object.
  mutable std::recursive_mutex mutex_;
};

PageGraphics extract_page_impl(const Document& doc, int page_index,
                               ExtractStats* stats, double thin_rule_max = 3.0);

}  // namespace gridlock::pdf
