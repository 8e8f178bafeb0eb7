#pragma once

// JSON forms of reports, coefficient records and run manifests
// (nlohmann::ordered_json keeps insertion order, so output is stable).

#include <cmath>
#include <string>

#include <json.hpp>

#include "hshear/mapping_catalog.hpp"
#include "hshear/verification.hpp"

namespace hshear {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "hshear 1.0.0";

/// Non-finite values become null (JSON has no inf/nan).
inline Json json_number(double x)
{
    if (!std::isfinite(x))
        return nullptr;
    return x;
}

inline Json to_json(Complex z) { return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

inline Json to_json(const FamilyParams& f)
{
    Json j;
    j["family"] = to_string(f.family);
    j["c"] = f.uses_c() ? Json(f.c) : Json(nullptr);
    j["a"] = f.uses_a() ? Json(f.a) : Json(nullptr);
    j["n"] = f.uses_n() ? Json(f.n) : Json(nullptr);
    return j;
}

inline Json to_json(const GridSpec& g)
{
    return Json{{"rings", g.rings}, {"spokes", g.spokes}, {"r_max", g.r_max}};
}

inline Json to_json(const VerificationReport& r)
{
    Json j;
    j["check_name"] = r.check_name;
    j["family"] = to_json(r.family);
    j["grid"] = to_json(r.grid);
    j["max_residual"] = json_number(r.max_residual);
    j["tolerance"] = json_number(r.tolerance);
    j["passed"] = r.passed;
    j["worst_point"] = to_json(r.worst_point.value());
    if (!r.details.empty()) {
        Json d = Json::object();
        for (const auto& [k, v] : r.details)
            d[k] = json_number(v);
        j["details"] = d;
    }
    return j;
}

/// Largest |partial-fraction sum - rational function| over `points` seeded
/// disk points (deterministic golden-angle spiral inside r <= 0.9).
inline double reconstruction_residual(const PartialFractionCoeffs& pf, int points = 50)
{
    double worst = 0.0;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < points; ++k) {
        const double r = 0.9 * std::sqrt((k + 0.5) / points);
        const Complex z = std::polar(r, golden * k);
        worst = std::max(worst, std::abs(pf.evaluate(z) - pf.target(z)));
    }
    return worst;
}

inline Json to_json(const PartialFractionCoeffs& pf)
{
    Json j;
    j["family"] = pf.is_f1n() ? "f_1n" : "f_2n";
    j["kind"] = to_string(pf.kind);
    j["n"] = pf.n;
    Json scalars = Json::array();
    for (const auto& s : pf.scalars) {
        Json e;
        e["name"] = s.name;
        e["num"] = s.coeff.num;
        e["den"] = s.coeff.den;
        e["value"] = s.coeff.value();
        e["term"] = std::string(s.at_minus_one ? "(1+z)^-" : "(1-z)^-") + std::to_string(s.power);
        scalars.push_back(e);
    }
    j["scalars"] = scalars;
    Json poles = Json::array();
    for (const auto& p : pf.poles) {
        Json e;
        e["k"] = p.k;
        e[p.first_name] = to_json(p.first);
        e[p.second_name] = to_json(p.second);
        poles.push_back(e);
    }
    j["pole_form"] = "first/(1 - z exp(-2 pi i k/n)) + second/(1 - z exp(2 pi i k/n))";
    j["poles"] = poles;
    j["reconstruction_residual"] = reconstruction_residual(pf);
    return j;
}

} // namespace hshear
