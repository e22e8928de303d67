#pragma once

#include <stdexcept>
#include <string>

namespace afcsim {

// Base for every error raised by the library. Protocol-level rejections are
// never exceptions; they travel as afc::ResponseCode values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoincidentPoints : public Error {
 public:
  CoincidentPoints() : Error("points are coincident; bearing is undefined") {}
};

class DegenerateDistance : public Error {
 public:
  explicit DegenerateDistance(double distance_m)
      : Error("path loss requested at " + std::to_string(distance_m) + " m (minimum is 1 m)") {}
};

class UnsupportedBandwidth : public Error {
 public:
  explicit UnsupportedBandwidth(int bandwidth_mhz)
      : Error("unsupported 6 GHz bandwidth: " + std::to_string(bandwidth_mhz) + " MHz") {}
};

class NoFixAvailable : public Error {
 public:
  NoFixAvailable() : Error("no GNSS fix available") {}
};

class InsufficientGroup : public Error {
 public:
  explicit InsufficientGroup(std::size_t size)
      : Error("group consistency needs at least 2 APs, got " + std::to_string(size)) {}
};

// Malformed input document. `line` is 1-based, 0 when unknown; `field` is a
// JSON-pointer-like path to the offending member when known.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line = 0, std::string field = {})
      : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line, const std::string& field) {
    std::string out = "parse error";
    if (line != 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in '" + field + "'";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace afcsim
