#pragma once

#include <string>
#include <vector>

#include "tspace/jsonio.hpp"

namespace tspace {

struct CheckResult {
  std::string id;
  std::string title;
  std::string params;
  bool pass = false;
  std::string detail;
  double wall_ms = 0;
};

struct VerificationReport {
  std::string profile;
  bool all_pass = false;
  std::vector<CheckResult> checks;
  /// FNV-1a over the canonical serialization with wall times excluded, so
  /// reports compare bit-for-bit across runs of the same build.
  uint64_t digest = 0;
};

/// Runs the verification checks. profile "quick" restricts to q in {2,3};
/// "full" runs every configured field. scripts_dir locates the shipped
/// derivation scripts.
VerificationReport verify_suite(const std::string& profile, const std::string& scripts_dir);

Json verification_report_to_json(const VerificationReport& r);

}  // namespace tspace
