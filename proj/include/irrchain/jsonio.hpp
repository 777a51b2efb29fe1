#pragma once

// JSON views of verdicts, transform specs, and chain reports.
//
// Verdict:     {"pass": bool, "theorem": str,
//               "checks": [{"name": str, "status": "pass|fail|skipped",
//                           "detail": str}]}
// ChainReport: {"iterates": [{"m", "degree", "expected_degree",
//               "irreducible": true|false|"skipped-cap",
//               "invariance": [{"zeta_order", "primitive", "pass"}],
//               "self_reciprocal"?, "structural_identity"?, "wall_ms"?}],
//               "pass": bool}
//
// Wall times are omitted unless asked for: canonical outputs must be
// byte-identical across runs.

#include <json.hpp>

#include "irrchain/chain.hpp"
#include "irrchain/criteria.hpp"
#include "irrchain/format.hpp"
#include "irrchain/transform.hpp"

namespace irrchain {

inline nlohmann::json to_json(const Verdict& v) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : v.checks) {
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    }
    return {{"pass", v.pass()}, {"theorem", v.theorem}, {"checks", checks}};
}

inline nlohmann::json to_json(const TransformSpec& spec) {
    nlohmann::json j = {{"kind", to_string(spec.kind())},
                        {"t", spec.t()},
                        {"sigma", mat_to_string(spec.sigma())},
                        {"field_level",
                         spec.field_level() == FieldLevel::base ? "base" : "quadratic"},
                        {"q", to_string_u128(spec.base_field()->order())}};
    if (spec.c()) j["c"] = element_to_string(*spec.c());
    return j;
}

inline nlohmann::json to_json(const IterateRecord& r, bool with_timings) {
    nlohmann::json j = {{"m", r.m},
                        {"degree", r.degree},
                        {"expected_degree", to_string_u128(r.expected_degree)}};
    switch (r.irreducible) {
        case IrrStatus::yes: j["irreducible"] = true; break;
        case IrrStatus::no: j["irreducible"] = false; break;
        case IrrStatus::skipped_cap: j["irreducible"] = "skipped-cap"; break;
    }
    nlohmann::json inv = nlohmann::json::array();
    for (const InvarianceEntry& e : r.invariance)
        inv.push_back({{"zeta_order", e.zeta_order}, {"primitive", e.primitive}, {"pass", e.pass}});
    j["invariance"] = inv;
    if (r.self_reciprocal) j["self_reciprocal"] = *r.self_reciprocal;
    if (r.structural_identity) j["structural_identity"] = *r.structural_identity;
    if (with_timings) j["wall_ms"] = r.wall_ms;
    return j;
}

inline nlohmann::json to_json(const ChainReport& rep, bool with_timings = false) {
    nlohmann::json its = nlohmann::json::array();
    for (const IterateRecord& r : rep.iterates) its.push_back(to_json(r, with_timings));
    return {{"iterates", its}, {"verified", rep.verified}, {"pass", rep.pass()}};
}

}  // namespace irrchain
