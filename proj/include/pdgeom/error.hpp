#pragma once

#include <stdexcept>
#include <string>

namespace pdgeom {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  input,           // malformed data or arguments
  resource_limit,  // a configured size cap was exceeded
  hypothesis,      // a construction precondition fails for the given input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error input_error(const std::string& what) {
  return Error(ErrorKind::input, what);
}

inline Error limit_error(const std::string& what) {
  return Error(ErrorKind::resource_limit, what);
}

inline Error hypothesis_error(const std::string& what) {
  return Error(ErrorKind::hypothesis, what);
}

}  // namespace pdgeom
