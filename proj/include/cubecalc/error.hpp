#pragma once

#include <stdexcept>
#include <string>

namespace cubecalc {

// Caller violated a precondition (bad index, shape mismatch, invalid spec).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a configured desk-scale cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON files, field strings).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw UsageError(what);
}

}  // namespace detail
}  // namespace cubecalc
