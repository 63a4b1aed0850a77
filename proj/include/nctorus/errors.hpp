#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nct {

/// Base of every error raised by the library. `kind()` is the stable,
/// machine-readable name used in CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define NCT_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}          \
  };

NCT_DEFINE_ERROR(AliasingError)
NCT_DEFINE_ERROR(AlphaMismatch)
NCT_DEFINE_ERROR(TailTooLarge)
NCT_DEFINE_ERROR(TruncationError)
NCT_DEFINE_ERROR(OverflowError)
NCT_DEFINE_ERROR(ConsistencyError)
NCT_DEFINE_ERROR(PreconditionError)
NCT_DEFINE_ERROR(ConfigError)
NCT_DEFINE_ERROR(ExperimentError)

#undef NCT_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("ParseError", what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nct
