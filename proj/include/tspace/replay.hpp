#pragma once

#include <map>
#include <set>

#include "tspace/jsonio.hpp"
#include "tspace/rewrite.hpp"
#include "tspace/unitary.hpp"

namespace tspace {

/// One step of a derivation script. Labeled steps bind a polynomial
/// together with the set of spaces whose sum is known to contain it;
/// assertion steps check a claim and may upgrade that knowledge.
struct ScriptStep {
  enum class Op {
    generator,        // label = a named generator or schema instance of a space
    substitute,       // label = earlier(u); sound by T-space closure
    combine,          // label = sum of scalar * earlier labels
    poly,             // label = a literal polynomial, no membership known
    assert_equals,    // the label's polynomial equals a literal, exactly
    assert_in_space,  // label's polynomial lies in a space (named method);
                      // on success the label's space set gains that space
    assert_congruent, // a - b lies in a space (named method)
  };
  Op op;
  std::string label;        // empty for assertions
  std::string space;        // generator/asserts
  std::string of, a, b;     // label references
  std::string method;       // derived | rewrite | special | mde
  std::string gen;          // generator id
  std::optional<std::pair<std::string, Json>> schema_inst;  // (schema id, params)
  std::string poly_text, u_text;
  std::vector<std::pair<Json, std::string>> combo;  // (scalar json, label)
  BigInt cutoff = 64;       // mde method cutoff
};

struct SpaceBinding {
  std::string key;
  bool unitary = false;
  TSpaceDesc desc;            // base space (unitary bindings strip constants)
  bool include_constants = false;
};

struct DerivationScript {
  std::string name;
  FieldSpec field;
  Ambient ambient = Ambient::nonunitary;
  std::vector<SpaceBinding> spaces;
  std::vector<ScriptStep> steps;

  const SpaceBinding* find_space(const std::string& key) const;
};

/// Parses and validates a script: labels are unique, references point
/// backwards, spaces resolve. Errors: ParseError, UnknownLabel,
/// ForwardReference.
DerivationScript parse_script(const Json& j);
DerivationScript parse_script_text(const std::string& text);
DerivationScript load_script(const std::string& path);

struct StepOutcome {
  size_t index;
  bool ok;
  std::string note;
  SparsePoly residual;  // for failed equality/congruence checks
};

struct LabelState {
  SparsePoly poly;
  std::set<std::string> spaces;  // the element lies in the sum of these
};

struct RunReport {
  bool pass = true;
  int first_fail = -1;
  std::vector<StepOutcome> steps;
  std::map<std::string, LabelState> labels;
};

/// Executes every step by exact arithmetic. Failures are verdicts, not
/// errors: the report names the first failing step and its residual.
RunReport run_script(const DerivationScript& s);

Json report_to_json(const FieldSpec& spec, const RunReport& r);

}  // namespace tspace
