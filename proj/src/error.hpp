#pragma once

#include <stdexcept>
#include <string>

namespace vpc {

enum class ErrCode {
  Syntax,          // source text rejected
  Dialect,         // construct not available in the requested dialect
  OpenTerm,        // evaluation/encoding of a term with free variables
  IllTyped,        // term fails the index type check
  FuelExhausted,   // runaway unguarded recursion during transition derivation
  BadArgument,     // malformed input to a library operation
  Capture,         // substitution would capture a binder (never auto-renamed)
  Internal,
};

struct Error : std::runtime_error {
  ErrCode code;
  Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(ErrCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace vpc
