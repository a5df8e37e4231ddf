#pragma once

#include <stdexcept>
#include <string>

namespace gridlock {

// Base for all errors raised by the library. Subclasses distinguish the
// failure classes callers are expected to branch on.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

class PdfError : public Error {
 public:
  explicit PdfError(const std::string& msg) : Error(msg) {}
};

class PdfEncryptionError : public PdfError {
 public:
  explicit PdfEncryptionError(const std::string& msg) : PdfError(msg) {}
};

class ExternalToolError : public Error {
 public:
  ExternalToolError(const std::string& msg, std::string diagnostics)
      : Error(msg), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

// A wired region whose rule lattice collapses below 2x2 after snapping.
class DegenerateRegionError : public Error {
 public:
  explicit DegenerateRegionError(const std::string& msg) : Error(msg) {}
};

}  // namespace gridlock
