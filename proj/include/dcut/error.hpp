#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace dcut {

// Error classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
  io = 2,
  parse = 3,
  config = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Shortest representation that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    return std::to_string(value);
  }
  return std::string(buf, end);
}

}  // namespace dcut
