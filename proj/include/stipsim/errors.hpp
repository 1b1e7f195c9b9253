#pragma once

#include <stdexcept>
#include <string>

namespace stipsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed machine description or config text. line <= 0 means "no line info".
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
        line(line_) {}
};

// Invalid experiment/schedule configuration (postulate violations and the like).
struct ConfigError : Error {
  using Error::Error;
};

// Input string cannot be encoded for / decoded from a machine tape.
struct EncodingError : Error {
  using Error::Error;
};

// Structured input outside a problem's domain (singular matrix, K < 1, ...).
struct DomainError : Error {
  using Error::Error;
};

// API misuse or internal inconsistency: stepping a halted configuration,
// classify_case fed values that violate its own inequality.
struct ContractError : Error {
  using Error::Error;
};

}  // namespace stipsim
