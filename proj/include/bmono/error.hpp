#pragma once

#include <stdexcept>
#include <string>

namespace bmono {

enum class ErrorKind { invalid, parse, search_exhausted, mismatch };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

struct SearchExhausted : Error {
  explicit SearchExhausted(const std::string& what) : Error(ErrorKind::search_exhausted, what) {}
};

inline const char* error_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return "E_PARSE";
    case ErrorKind::search_exhausted: return "E_SEARCH_EXHAUSTED";
    case ErrorKind::mismatch: return "E_MISMATCH";
    default: return "E_INVALID";
  }
}

}  // namespace bmono
