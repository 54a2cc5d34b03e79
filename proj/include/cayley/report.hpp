#pragma once

// JSON codecs for algebras and verification reports, plus the human-readable
// report renderer.  Serialization is deterministic: object keys keep
// insertion order (or sorted map order for dims/witness entries) and scalars
// use the canonical field-text encoding, so identical inputs yield
// byte-identical output.

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "check.hpp"
#include "construct.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"

namespace cayley {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

// ---------------------------------------------------------------------------
// Field codec
// ---------------------------------------------------------------------------

inline Json field_to_json(const FieldSpec& s) {
    Json j;
    if (s.kind() == FieldKind::rational) {
        j["kind"] = "rational";
    } else {
        j["kind"] = "prime";
        j["p"] = s.modulus();
    }
    return j;
}

inline FieldSpec field_from_json(const Json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "rational") return FieldSpec::rationals();
        if (kind == "prime") return FieldSpec::prime(j.at("p").get<std::uint64_t>());
        throw parse_error("field_from_json: unknown kind '" + kind + "'");
    } catch (const Json::exception& e) {
        throw parse_error(std::string("field_from_json: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Algebra codec
// ---------------------------------------------------------------------------

namespace detail {

template <ScalarField F>
Json scalars_to_json(const Vec<F>& v) {
    Json out = Json::array();
    for (const F& x : v) out.push_back(x.str());
    return out;
}

template <ScalarField F>
Vec<F> scalars_from_json(const FieldSpec& s, const Json& j, std::size_t expect,
                         const char* what) {
    if (!j.is_array() || j.size() != expect)
        throw parse_error(std::string("algebra_from_json: ") + what + " must be an array of length " +
                          std::to_string(expect));
    Vec<F> out;
    out.reserve(expect);
    for (const Json& entry : j) out.push_back(F::parse(s, entry.get<std::string>()));
    return out;
}

} // namespace detail

/// Serializes the structure constants, unit, and derived form of an algebra.
template <ScalarField F>
Json algebra_to_json(const CayleyAlgebra<F>& c) {
    const std::size_t n = c.dim();
    Json j;
    j["field"] = field_to_json(c.spec());
    j["dim"] = n;
    j["unit"] = detail::scalars_to_json(c.unit());
    Json table = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < n; ++k)
            row.push_back(detail::scalars_to_json(c.structure().basis_product(i, k)));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["basis_norms"] = detail::scalars_to_json(c.form().basis_norms);
    Json gram = Json::array();
    for (std::size_t i = 0; i < n; ++i) gram.push_back(detail::scalars_to_json(c.form().polar_gram.row(i)));
    j["polar_gram"] = std::move(gram);
    return j;
}

/// Rebuilds an algebra from its JSON encoding.  The caller dispatches on the
/// embedded field kind; F must match it.  The multiplication table is
/// revalidated from scratch (unit, derived form), the stored norms are
/// cross-checked against the derived ones, and the canonical grading is
/// re-attached when the table is exactly the canonical split table.
template <ScalarField F>
CayleyAlgebra<F> algebra_from_json(const Json& j) {
    FieldSpec s = field_from_json(j.at("field"));
    if ((s.kind() == FieldKind::rational) != std::same_as<F, Rational>)
        throw field_mismatch("algebra_from_json: scalar type does not match the embedded field");
    std::size_t n = 0;
    Vec<F> unit;
    std::vector<F> flat;
    Vec<F> stored_norms;
    std::vector<Vec<F>> stored_gram_rows;
    try {
        n = j.at("dim").get<std::size_t>();
        if (n == 0) throw parse_error("algebra_from_json: dim must be positive");
        unit = detail::scalars_from_json<F>(s, j.at("unit"), n, "unit");
        const Json& table = j.at("table");
        if (!table.is_array() || table.size() != n)
            throw parse_error("algebra_from_json: table must have dim rows");
        flat.reserve(n * n * n);
        for (const Json& row : table) {
            if (!row.is_array() || row.size() != n)
                throw parse_error("algebra_from_json: table rows must have dim entries");
            for (const Json& cell : row)
                for (F& x : detail::scalars_from_json<F>(s, cell, n, "table entry"))
                    flat.push_back(std::move(x));
        }
        stored_norms = detail::scalars_from_json<F>(s, j.at("basis_norms"), n, "basis_norms");
        const Json& gram = j.at("polar_gram");
        if (!gram.is_array() || gram.size() != n)
            throw parse_error("algebra_from_json: polar_gram must have dim rows");
        for (const Json& row : gram)
            stored_gram_rows.push_back(detail::scalars_from_json<F>(s, row, n, "polar_gram row"));
    } catch (const Json::exception& e) {
        throw parse_error(std::string("algebra_from_json: ") + e.what());
    }

    AlgebraStructure<F> alg(s, n, std::move(unit), std::move(flat));
    bool split = has_canonical_split_table(alg);
    std::optional<Grading> grading;
    if (split) grading = Grading{{0, 1}, {2, 3, 4}, {5, 6, 7}};
    CayleyAlgebra<F> c(std::move(alg), split ? "split" : "custom", std::move(grading));

    if (c.form().basis_norms != stored_norms)
        throw malformed_algebra("algebra_from_json: stored basis_norms disagree with the table");
    Matrix<F> stored_gram = Matrix<F>::from_rows(s, stored_gram_rows);
    if (!(c.form().polar_gram == stored_gram))
        throw malformed_algebra("algebra_from_json: stored polar_gram disagrees with the table");
    return c;
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

/// Everything a report needs besides the checks themselves.
struct ReportHeader {
    FieldSpec field;
    std::string algebra_id;
    std::uint64_t seed = 42;
};

template <ScalarField F>
ReportHeader report_header(const CayleyAlgebra<F>& c, std::uint64_t seed) {
    return ReportHeader{c.spec(), c.label(), seed};
}

struct SummaryCounts {
    long long pass = 0, fail = 0, skipped = 0;
};

inline SummaryCounts tally(const std::vector<CheckOutcome>& checks) {
    SummaryCounts counts;
    for (const CheckOutcome& chk : checks) {
        switch (chk.status) {
        case CheckStatus::pass: ++counts.pass; break;
        case CheckStatus::fail: ++counts.fail; break;
        case CheckStatus::skipped: ++counts.skipped; break;
        }
    }
    return counts;
}

inline Json report_to_json(const ReportHeader& header, const std::vector<CheckOutcome>& checks) {
    Json j;
    j["schema"] = report_schema_version;
    j["tool_version"] = tool_version;
    j["field"] = field_to_json(header.field);
    j["algebra_id"] = header.algebra_id;
    j["seed"] = header.seed;
    Json arr = Json::array();
    for (const CheckOutcome& chk : checks) {
        Json entry;
        entry["id"] = chk.id;
        entry["anchor"] = chk.anchor;
        entry["status"] = to_string(chk.status);
        entry["dims"] = Json::object();
        for (const auto& [k, v] : chk.dims) entry["dims"][k] = v;
        entry["witness"] = Json::object();
        for (const auto& [k, v] : chk.witness) entry["witness"][k] = v;
        entry["detail"] = chk.detail;
        arr.push_back(std::move(entry));
    }
    j["checks"] = std::move(arr);
    SummaryCounts counts = tally(checks);
    j["summary"] = Json::object();
    j["summary"]["pass"] = counts.pass;
    j["summary"]["fail"] = counts.fail;
    j["summary"]["skipped"] = counts.skipped;
    return j;
}

/// One line per check, quoting the anchor, followed by indented dims,
/// witnesses, and detail, then a one-line summary.
inline std::string report_to_text(const ReportHeader& header, const std::vector<CheckOutcome>& checks) {
    std::string out;
    out += "algebra " + header.algebra_id + " over " + header.field.str() +
           ", seed " + std::to_string(header.seed) + "\n";
    for (const CheckOutcome& chk : checks) {
        std::string status = to_string(chk.status);
        for (char& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out += chk.id + " " + status + " — \"" + chk.anchor + "\"\n";
        if (!chk.dims.empty()) {
            out += "    dims:";
            for (const auto& [k, v] : chk.dims) out += " " + k + "=" + std::to_string(v);
            out += "\n";
        }
        for (const auto& [k, v] : chk.witness) out += "    witness " + k + " = " + v + "\n";
        if (!chk.detail.empty()) out += "    detail: " + chk.detail + "\n";
    }
    SummaryCounts counts = tally(checks);
    out += "summary: " + std::to_string(checks.size()) + " checks, " + std::to_string(counts.pass) +
           " passed, " + std::to_string(counts.fail) + " failed, " + std::to_string(counts.skipped) +
           " skipped\n";
    return out;
}

} // namespace cayley
