#ifndef CQBENCH_ERRORS_HPP
#define CQBENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cqb {

// Error categories map to CLI exit codes; the category name prefixes the
// rendered message so scripts can dispatch on it.
enum class ErrorCategory {
  Config = 2,    // bad or missing configuration
  Io = 3,        // file system / OS failures
  Parse = 4,     // malformed input data
  State = 5,     // stage ordering / missing predecessor artifacts
  Integrity = 6, // cross-artifact consistency violations
  Internal = 1,
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::State: return "state";
    case ErrorCategory::Integrity: return "integrity";
    case ErrorCategory::Internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }
  int exit_code() const { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorCategory::Config, m) {}
};
struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorCategory::Io, m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorCategory::Parse, m) {}
};
struct StateError : Error {
  explicit StateError(const std::string& m) : Error(ErrorCategory::State, m) {}
};
struct IntegrityError : Error {
  explicit IntegrityError(const std::string& m) : Error(ErrorCategory::Integrity, m) {}
};

}  // namespace cqb

#endif
