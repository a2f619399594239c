/**
 * @file report.hpp
 * @brief JSON serialization of reports (schema "1").
 *
 * Every document is an object with "schema": "1" and "kind". Complex numbers are
 * {"re": x, "im": y}. runtime_ms is null unless timing was requested, so that repeated
 * runs produce identical bytes.
 */
#pragma once

#include <geochar/coherent.hpp>
#include <geochar/cycle_integral.hpp>
#include <geochar/eigendist.hpp>
#include <geochar/fixed_point.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace geochar {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json report_envelope(const std::string& kind) { return Json{{"schema", kSchemaVersion}, {"kind", kind}}; }

inline Json runtime_field(std::optional<double> ms) { return ms ? Json(*ms) : Json(nullptr); }

inline Json to_json(const ResidualRecord& r) {
    return Json{{"phi_id", r.phi_id}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

inline Json to_json(const ResidualReport& rep) {
    Json records = Json::array();
    for (const auto& r : rep.records) records.push_back(to_json(r));
    return Json{{"records", records}, {"max_residual", rep.max_residual}, {"pass", rep.pass}};
}

inline Json to_json(const VerificationRecord& r, bool timing) {
    return Json{{"case", r.name},
                {"lhs", to_json(r.lhs)},
                {"rhs", to_json(r.rhs)},
                {"rel_error", r.rel_error},
                {"tail_estimate", r.tail_estimate},
                {"runtime_ms", runtime_field(timing ? std::optional<double>(r.runtime_ms) : std::nullopt)},
                {"pass", r.pass}};
}

inline std::string component_label(CartanKind k, Component c) {
    if (k == CartanKind::Compact) return c.sign > 0 ? "theta in (0,pi)" : "theta in (pi,2pi)";
    return std::string(c.eps > 0 ? "eps=+1" : "eps=-1") + (c.sign > 0 ? ",s>0" : ",s<0");
}

/** Which branch of e^{lambda - rho} the coefficient is read against. */
inline std::string branch_label(CartanKind k, Component c, std::optional<int> chi_F) {
    if (k == CartanKind::Compact) return c.sign > 0 ? "value 1 at identity" : "continued through theta - 2pi";
    if (c.eps > 0) return "value 1 at identity";
    if (chi_F) return "chi_F(-1) = " + std::to_string(*chi_F);
    return "central -1 carried by the coefficient";
}

/** Rows {sheaf, cartan, component, fixed_point, coefficient, branch} of a local expression. */
inline Json coefficient_table(const std::string& sheaf, const LocalExpression& e, std::optional<int> chi_F = std::nullopt) {
    Json rows = Json::array();
    for (const auto& [key, d] : e.coefficients)
        rows.push_back(Json{{"sheaf", sheaf},
                            {"cartan", to_string(key.cartan)},
                            {"component", component_label(key.cartan, key.component)},
                            {"fixed_point", fixed_point_name(e.group, key.cartan, key.fixed_point)},
                            {"coefficient", to_json(d)},
                            {"branch", branch_label(key.cartan, key.component, chi_F)}});
    return rows;
}

inline Json to_json(const KirillovReport& rep) {
    Json rows = Json::array();
    for (const auto& r : rep.rows)
        rows.push_back(Json{{"m", r.m}, {"theta", r.theta}, {"lhs", r.lhs}, {"rhs", to_json(r.rhs)}, {"deviation", std::abs(r.rhs - r.lhs)}});
    return Json{{"rows", rows}, {"max_deviation", rep.max_deviation}};
}

inline Json to_json(const CartanElement& t) {
    if (t.kind == CartanKind::Compact) return Json{{"cartan", "compact"}, {"theta", t.theta}};
    return Json{{"cartan", "split"}, {"eps", t.eps}, {"s", t.s}};
}

inline Json to_json(const CoherenceRow& r) {
    return Json{{"case", r.label}, {"point", to_json(r.point)}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)},
                {"deviation", r.deviation}, {"pass", r.pass}};
}

/** Summary plus failures only; a passing report lists no rows. */
inline Json to_json(const CoherenceReport& rep) {
    Json failures = Json::array();
    for (const auto& r : rep.rows)
        if (!r.pass) failures.push_back(to_json(r));
    return Json{{"rows_checked", rep.rows.size()},
                {"max_deviation", rep.max_deviation},
                {"failures", failures},
                {"chamber_mismatches", rep.chamber_mismatches},
                {"pass", rep.pass}};
}

inline Json to_json(const CycleIntegralResult& r) {
    Json partial = Json::array();
    for (const auto& p : r.partial) partial.push_back(to_json(p));
    return Json{{"value", to_json(r.value)}, {"partial", partial}, {"tails", r.tails},
                {"tail_estimate", r.tail_estimate}, {"quad_error", r.quad_error}, {"converged", r.converged}};
}

}  // namespace geochar
