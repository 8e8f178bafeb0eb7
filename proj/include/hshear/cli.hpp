#pragma once

// hshear map|surface|verify|coeffs --family <id> [--c] [--a] [--n] [--rings]
//        [--spokes] [--rmax] [--tol] --out <path>
//
// Exit codes: 0 ok, 1 check failed or evaluation error, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hshear/json_io.hpp"
#include "hshear/mapping_catalog.hpp"
#include "hshear/render.hpp"
#include "hshear/surface_lift.hpp"
#include "hshear/verification.hpp"

namespace hshear::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string family;
    std::optional<double> c;
    std::optional<double> a;
    std::optional<int> n;
    int rings = 10;
    int spokes = 24;
    double r_max = 0.98;
    std::optional<double> tol;
    std::string out;
    std::string checks;
    int samples = 256;
    int canvas = 800;
    double stroke = 1.0;
    std::vector<std::string> arguments;

    RenderConfig render() const { return {rings, spokes, r_max, stroke, canvas, samples}; }
    GridSpec grid() const { return {rings, spokes, r_max}; }
};

inline FamilyParams family_from(const Options& o)
{
    const auto id = parse_family_id(o.family);
    if (!id)
        throw UsageError("unknown family '" + o.family + "' (expected F_a, F_0a, F_1a, F_ca, f_0n, f_1n, f_2n, f_cn)");
    FamilyParams f;
    f.family = *id;
    auto need = [&](bool wanted, bool given, const char* flag) {
        if (wanted && !given)
            throw UsageError("family " + o.family + " requires " + flag);
        if (!wanted && given)
            throw UsageError("family " + o.family + " does not take " + flag);
    };
    need(f.uses_c(), o.c.has_value(), "--c");
    need(f.uses_a(), o.a.has_value(), "--a");
    need(f.uses_n(), o.n.has_value(), "--n");
    if (o.c)
        f.c = *o.c;
    else if (auto kc = f.koebe_c())
        f.c = *kc;
    if (o.a)
        f.a = *o.a;
    if (o.n)
        f.n = *o.n;
    try {
        f.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return f;
}

inline std::vector<std::string> split_checks(const std::string& list)
{
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

inline Json manifest(const Options& o, const FamilyParams& f)
{
    Json m;
    m["command"] = o.command;
    m["arguments"] = o.arguments;
    m["family"] = to_json(f);
    Json cfg;
    cfg["rings"] = o.rings;
    cfg["spokes"] = o.spokes;
    cfg["r_max"] = o.r_max;
    cfg["tol"] = o.tol ? Json(*o.tol) : Json(nullptr);
    cfg["samples_per_curve"] = o.samples;
    cfg["canvas_px"] = o.canvas;
    cfg["stroke_width"] = o.stroke;
    cfg["checks"] = o.checks;
    m["config"] = cfg;
    m["tool_version"] = kToolVersion;
    return m;
}

inline void write_manifest(const Options& o, const FamilyParams& f)
{
    write_file(o.out + ".manifest.json", manifest(o, f).dump(2) + "\n");
}

inline int cmd_map(const Options& o)
{
    const FamilyParams f = family_from(o);
    try {
        o.render().validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    write_file(o.out, render_map_svg(Family(f), o.render()));
    write_manifest(o, f);
    return kOk;
}

inline int cmd_surface(const Options& o)
{
    const FamilyParams f = family_from(o);
    if (!liftable(f)) {
        throw UsageError(f.uses_n() ? "surface needs an even --n (z^n must be a square)"
                                    : "surface needs --a 0 (the dilatation must be a square)");
    }
    try {
        o.grid().validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    write_file(o.out, render_obj(build_mesh(f, o.grid())));
    write_manifest(o, f);
    return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out)
{
    const FamilyParams f = family_from(o);
    try {
        o.grid().validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    std::vector<std::string> names = o.checks.empty() ? applicable_checks(f) : split_checks(o.checks);
    for (const auto& n : names) {
        const auto& all = all_check_names();
        if (std::find(all.begin(), all.end(), n) == all.end())
            throw UsageError("unknown check '" + n + "'");
        if (!check_applicable(n, f))
            throw UsageError("check '" + n + "' does not apply to " + f.label());
    }
    const Family family(f);
    Json reports = Json::array();
    bool all_passed = true;
    for (const auto& n : names) {
        const VerificationReport r = run_check(n, family, o.grid(), o.tol);
        all_passed = all_passed && r.passed;
        reports.push_back(to_json(r));
        out << (r.passed ? "PASS " : "FAIL ") << n << " residual=" << r.max_residual << " tolerance=" << r.tolerance
            << '\n';
    }
    write_file(o.out, reports.dump(2) + "\n");
    write_manifest(o, f);
    return all_passed ? kOk : kCheckFailed;
}

inline int cmd_coeffs(const Options& o, std::ostream& out)
{
    const FamilyParams f = family_from(o);
    if (f.family != FamilyId::f_1n && f.family != FamilyId::f_2n)
        throw UsageError("coeffs supports f_1n and f_2n only");
    const PartialFractionCoeffs pf = f.family == FamilyId::f_1n ? coeffs_f1n(f.n) : coeffs_f2n(f.n);
    const std::string text = to_json(pf).dump(2) + "\n";
    out << text;
    if (!o.out.empty()) {
        write_file(o.out, text);
        write_manifest(o, f);
    }
    return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Options o;
    for (int i = 1; i < argc; ++i)
        o.arguments.emplace_back(argv[i]);

    CLI::App app{"Harmonic shear mappings: figures, minimal-surface meshes, checks and coefficients", "hshear"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    auto common = [&o](CLI::App* sub, bool out_required) {
        sub->add_option("--family", o.family, "F_a, F_0a, F_1a, F_ca, f_0n, f_1n, f_2n or f_cn")->required();
        sub->add_option("--c", o.c, "Koebe parameter c in [0, 2]");
        sub->add_option("--a", o.a, "dilatation parameter a in [-1, 1]");
        sub->add_option("--n", o.n, "dilatation exponent n >= 1");
        sub->add_option("--rings", o.rings, "concentric circles")->capture_default_str();
        sub->add_option("--spokes", o.spokes, "radial segments")->capture_default_str();
        sub->add_option("--rmax", o.r_max, "outermost radius")->capture_default_str();
        sub->add_option("--tol", o.tol, "override the check tolerance");
        auto* opt = sub->add_option("--out", o.out, "output path");
        if (out_required)
            opt->required();
    };

    auto* map = app.add_subcommand("map", "SVG image of the polar grid");
    common(map, true);
    map->add_option("--samples", o.samples, "points per curve")->capture_default_str();
    map->add_option("--canvas", o.canvas, "canvas width in pixels")->capture_default_str();
    map->add_option("--stroke", o.stroke, "stroke width in pixels")->capture_default_str();
    auto* surface = app.add_subcommand("surface", "OBJ mesh of the minimal-surface lift");
    common(surface, true);
    auto* verify = app.add_subcommand("verify", "JSON report of numerical checks");
    common(verify, true);
    verify->add_option("--checks", o.checks, "comma-separated check names (default: all applicable)");
    auto* coeffs = app.add_subcommand("coeffs", "partial-fraction coefficients as JSON");
    common(coeffs, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (map->parsed()) {
            o.command = "map";
            return cmd_map(o);
        }
        if (surface->parsed()) {
            o.command = "surface";
            return cmd_surface(o);
        }
        if (verify->parsed()) {
            o.command = "verify";
            return cmd_verify(o, out);
        }
        o.command = "coeffs";
        return cmd_coeffs(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

} // namespace hshear::cli
