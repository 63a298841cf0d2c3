#pragma once

#include <stdexcept>
#include <string>

namespace tspace {

enum class Errc {
  not_prime,
  reducible_modulus,
  zero_inverse,
  field_mismatch,
  ambient_mismatch,
  ambient_violation,
  expansion_overflow,
  constraint_violation,
  oracle_too_large,
  bad_characteristic,
  bad_params,
  parse_error,
  unknown_label,
  forward_reference,
  unsound_rule,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tspace
