#pragma once

#include <stdexcept>
#include <string>

namespace graphmat {

enum class ErrorKind {
  invalid_argument,
  malformed_document,
  invalid_shape,
  not_bipartite,
  cap_exceeded,
  overflow,
  dimension_mismatch,
  hypothesis_violated,
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::malformed_document: return "malformed document";
    case ErrorKind::invalid_shape: return "invalid shape";
    case ErrorKind::not_bipartite: return "not bipartite";
    case ErrorKind::cap_exceeded: return "cap exceeded";
    case ErrorKind::overflow: return "integer overflow";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::hypothesis_violated: return "hypothesis violated";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace graphmat
