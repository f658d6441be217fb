#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ballotree {

// Common base so callers can catch the whole family at once.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external input (bitstrings, tournament/spec files).
struct format_error : error {
  using error::error;
};

// Argument outside the defined domain (candidate out of range, bad set).
struct domain_error : error {
  using error::error;
};

// Tree shape preconditions (non-power-of-two tuples and the like).
struct shape_error : error {
  using error::error;
};

// A variable leaf had no value at evaluation time.
struct binding_error : error {
  using error::error;
};

// Unknown variable during gate compilation.
struct compile_error : error {
  using error::error;
};

// Refused exhaustive enumeration above the configured limit.
struct scale_error : error {
  using error::error;
};

// Text parse failure; carries the byte offset of the offending input.
struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace ballotree
