#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "etaq/verify.hpp"

namespace etaq {

// Exact rendering of a grid exponent k/24: "14" on the integer grid,
// "11/8" off it.
inline std::string exponent_string(long k24) {
    if (k24 % 24 == 0) return std::to_string(k24 / 24);
    long g = std::gcd(k24 < 0 ? -k24 : k24, 24L);
    return std::to_string(k24 / g) + "/" + std::to_string(24 / g);
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j{{"id", rep.id},
                     {"status", rep.pass ? "PASS" : "FAIL"},
                     {"bound", rep.sturm_bound},
                     {"space", rep.space},
                     {"checked", rep.checked},
                     {"elapsed_ms", rep.elapsed_ms},
                     {"description", rep.description},
                     {"mismatches", nlohmann::json::array()}};
    if (rep.mismatch)
        j["mismatches"].push_back({{"n", exponent_string(rep.mismatch->k24)},
                                   {"lhs", rep.mismatch->lhs.to_string()},
                                   {"rhs", rep.mismatch->rhs.to_string()}});
    return j;
}

inline nlohmann::json to_json(const CrosscheckReport& rep) {
    nlohmann::json mm = nlohmann::json::array();
    for (const auto& m : rep.mismatches)
        mm.push_back({{"n", m.n}, {"coefficient", m.coeff}, {"predicate", m.predicate}});
    return nlohmann::json{{"id", rep.id},
                          {"status", rep.pass ? "PASS" : "FAIL"},
                          {"checked", rep.checked},
                          {"zero_count", rep.zero_count},
                          {"nonzero_count", rep.nonzero_count},
                          {"mismatches", mm},
                          {"elapsed_ms", rep.elapsed_ms}};
}

inline nlohmann::json to_json(const ScanReport& rep) {
    nlohmann::json j{{"id", rep.target},
                     {"status", rep.pass ? "PASS" : "FAIL"},
                     {"mod", rep.mod},
                     {"residue", rep.residue},
                     {"limit", rep.limit},
                     {"checked", rep.checked},
                     {"zeros", rep.zeros},
                     {"g_floor", rep.g_floor},
                     {"elapsed_ms", rep.elapsed_ms}};
    if (rep.min_G2) {
        j["min_G_squared"] = to_string(*rep.min_G2);
        j["min_G_approx"] = std::sqrt(rep.min_G2->get_d());
    }
    return j;
}

}  // namespace etaq
