#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfdlog {

/// Malformed word text. `position` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gfdlog
