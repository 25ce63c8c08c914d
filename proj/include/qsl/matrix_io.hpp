#pragma once

// Machine-readable export: graded operators as sorted-coordinate JSON or
// CSV, residual reports as flat JSON objects.  Complex numbers serialize
// as [re, im] pairs; output is byte-stable across runs.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qsl/relations.hpp"
#include "qsl/sparse.hpp"

namespace qsl {

inline nlohmann::json matrix_to_json(const GradedOperator& op) {
    nlohmann::json j;
    j["rows"] = op.matrix().rows();
    j["cols"] = op.matrix().cols();
    j["parity"] = op.parity();
    nlohmann::json entries = nlohmann::json::array();
    for (const MatrixEntry& e : op.matrix().entries())
        entries.push_back({e.row, e.col, e.value.real(), e.value.imag()});
    j["entries"] = std::move(entries);
    return j;
}

inline void matrix_to_csv(std::ostream& os, const GradedOperator& op) {
    char line[128];
    for (const MatrixEntry& e : op.matrix().entries()) {
        std::snprintf(line, sizeof line, "%ld,%ld,%.17g,%.17g", e.row, e.col,
                      e.value.real(), e.value.imag());
        os << line << '\n';
    }
}

inline nlohmann::json report_to_json(const CheckReport& rep) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : rep.residuals) j[k] = v;
    return j;
}

}  // namespace qsl
