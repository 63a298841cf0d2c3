#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tspace {

// Exponents are arbitrary-precision: the generator families use exponents
// like q^(2^n) that overflow fixed width even for small parameters.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline uint64_t to_u64(const BigInt& v) { return static_cast<uint64_t>(v); }

}  // namespace tspace
