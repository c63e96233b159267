#pragma once

#include <stdexcept>
#include <string>

namespace hitfam {

// Failure categories. The CLI maps these onto process exit codes; library
// callers can switch on code() instead of parsing messages.
enum class errc {
  invalid_size,
  invalid_depth,
  invalid_tuple,
  invalid_family,
  invalid_pattern,
  missing_event,
  shape,
  collision,
  cycle,
  reference,
  transitive_edge,
  parse,
  inadmissible,
  infeasible,
  budget,
  pool_exhausted,
  generation_failed,
  unsupported_depth,
  addressing,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace hitfam
