#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paperfold {

enum class errc {
  size_guard,
  size_mismatch,
  invalid_argument,
  non_unit,
  no_convergence,
  singular_minor,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::size_guard: return "SIZE_GUARD";
    case errc::size_mismatch: return "SIZE_MISMATCH";
    case errc::invalid_argument: return "INVALID_ARGUMENT";
    case errc::non_unit: return "NON_UNIT";
    case errc::no_convergence: return "NO_CONVERGENCE";
    case errc::singular_minor: return "SINGULAR_MINOR";
  }
  return "UNKNOWN";
}

/// Single exception type for the library; `code()` tells callers (and the CLI
/// exit-code mapping) what went wrong. `index()` carries the order of the
/// vanishing minor for `singular_minor`, zero otherwise.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, std::size_t index = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  errc code() const noexcept { return code_; }
  std::size_t index() const noexcept { return index_; }

 private:
  errc code_;
  std::size_t index_;
};

namespace detail {

inline void require_size(std::size_t value, std::size_t lo, std::size_t hi, const char* what) {
  if (value < lo || value > hi) {
    throw error(errc::size_guard, std::string(what) + " = " + std::to_string(value) + " outside [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace detail
}  // namespace paperfold
