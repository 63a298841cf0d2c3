#pragma once

#include <json.hpp>
#include <string>

#include "tspace/linspan.hpp"

namespace tspace {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

/// [{"exp": "5", "coef": [1]}, ...] with exponents as decimal strings in
/// ascending order.
Json poly_to_json(const FieldSpec& spec, const SparsePoly& f);
SparsePoly poly_from_json(const FieldSpec& spec, const Json& j,
                          Ambient a = Ambient::nonunitary);

Json coef_to_json(const FieldSpec& spec, const FieldElement& c);
FieldElement coef_from_json(const FieldSpec& spec, const Json& j);

Json combo_to_json(const FieldSpec& spec, const Combo& combo);
Combo combo_from_json(const FieldSpec& spec, const Json& j);

Json functional_to_json(const FieldSpec& spec, const PeriodicFunctional& fn);
PeriodicFunctional functional_from_json(const FieldSpec& spec, const Json& j);

/// {"verdict": "member"|"nonmember"|"unknown", "target": ..., "steps": ...,
///  "functional": ..., "pivot_gap": ..., "bound": ...}
Json verdict_to_json(const FieldSpec& spec, const MembershipVerdict& v, const SparsePoly& target);

/// FNV-1a over the serialized text; used for reproducible report digests.
uint64_t fnv1a(const std::string& s);

}  // namespace tspace
