#pragma once

// Outcome records for verification checks.  Every check names the identity or
// dimension statement it tests (`anchor`), reports pass/fail/skipped, and
// carries exact dimensions and a witness when one exists.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cayley {

enum class CheckStatus { pass, fail, skipped };

inline std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
    }
}

struct CheckOutcome {
    std::string id;     ///< stable machine id, e.g. "thm41.phi_obstruction"
    std::string anchor; ///< the verified statement, as a formula
    CheckStatus status = CheckStatus::pass;
    std::map<std::string, long long> dims;        ///< named exact dimensions / counts
    std::map<std::string, std::string> witness;   ///< named exact vectors / scalars
    std::string detail;                           ///< free-form remark (skip reason, counts)

    bool passed() const { return status == CheckStatus::pass; }

    static CheckOutcome pass_outcome(std::string id, std::string anchor) {
        return CheckOutcome{std::move(id), std::move(anchor), CheckStatus::pass, {}, {}, ""};
    }
    static CheckOutcome fail_outcome(std::string id, std::string anchor, std::string detail) {
        return CheckOutcome{std::move(id), std::move(anchor), CheckStatus::fail, {}, {}, std::move(detail)};
    }
    static CheckOutcome skip_outcome(std::string id, std::string anchor, std::string reason) {
        return CheckOutcome{std::move(id), std::move(anchor), CheckStatus::skipped, {}, {}, std::move(reason)};
    }
};

inline bool all_passed(const std::vector<CheckOutcome>& checks) {
    for (const CheckOutcome& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

} // namespace cayley
