#pragma once
#include <stdexcept>
#include <string>

namespace iaw {

// Codes mirror the C API status values.
enum class Errc : int {
  invalid_argument = 1,
  domain = 2,
  convergence = 3,
  io = 4,
  internal = 5,
  check_failed = 6,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace iaw
