#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qtheta/bigreal.hpp"
#include "qtheta/precision.hpp"

// Verification reports: one record per checked fact, serializable to JSON
// and CSV with a fixed field order so successive runs diff cleanly.

namespace qtheta {

struct VerificationReport {
    std::string id;
    std::string anchor;     // citation string of the source table or identity
    int digits_requested = 0;
    int agreement = 0;      // measured shared digits (floored, capped by precision)
    std::string residual;   // |x-y|/max(|x|,|y|,1e-300) in short scientific form
    bool passed = false;
    std::string notes;
};

// Measure how many digits x and y share and compare against a requirement.
inline VerificationReport assert_equal(const BigReal& x, const BigReal& y, int digits,
                                       std::string id = "", std::string notes = "") {
    VerificationReport r;
    r.id = std::move(id);
    r.digits_requested = digits;
    r.agreement = agreement_digits(x, y);
    BigReal scale = abs_of(x);
    BigReal ay = abs_of(y);
    if (ay > scale) scale = ay;
    BigReal floor_val("1e-300", PrecisionContext(5));
    if (floor_val > scale) scale = floor_val;
    r.residual = format_scientific(abs_of(x - y) / scale);
    r.passed = r.agreement >= digits;
    r.notes = std::move(notes);
    return r;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["digits_requested"] = r.digits_requested;
    j["digits_agreed"] = r.agreement;
    j["residual"] = r.residual;
    j["pass"] = r.passed;
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<VerificationReport>& rs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace detail

inline std::string to_csv(const std::vector<VerificationReport>& rs) {
    std::string out = "id,anchor,digits_requested,digits_agreed,residual,pass,notes\n";
    for (const auto& r : rs) {
        out += detail::csv_escape(r.id) + "," + detail::csv_escape(r.anchor) + "," +
               std::to_string(r.digits_requested) + "," +
               std::to_string(r.agreement) + "," + r.residual + "," +
               (r.passed ? "true" : "false") + "," + detail::csv_escape(r.notes) + "\n";
    }
    return out;
}

} // namespace qtheta
