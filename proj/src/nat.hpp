#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vpc {

// Unbounded natural / integer. Nat is non-negative by convention; Int may go
// negative (linear-arithmetic internals only).
using Nat = boost::multiprecision::cpp_int;
using Int = boost::multiprecision::cpp_int;

inline Nat nat_isqrt(const Nat& n) { return sqrt(n); }

inline std::uint64_t nat_to_u64(const Nat& n, const char* what = "value") {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error(std::string(what) + " out of machine range");
  return n.convert_to<std::uint64_t>();
}

inline std::size_t nat_to_size(const Nat& n, const char* what = "count") {
  if (n < 0 || n > std::numeric_limits<std::size_t>::max())
    throw std::overflow_error(std::string(what) + " out of machine range");
  return n.convert_to<std::size_t>();
}

inline std::string nat_str(const Nat& n) { return n.str(); }

}  // namespace vpc
