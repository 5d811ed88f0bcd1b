// cmray: command line front end for the class field invariant toolkit.

#include "cmray/cmray.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

using namespace cmray;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

Bits default_prec_from_env()
{
    if (char const* s = std::getenv("CMRAY_PREC_BITS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 64 && v <= 4096) return static_cast<Bits>(v);
        std::cerr << "warning: ignoring CMRAY_PREC_BITS='" << s << "'\n";
    }
    return default_precision;
}

void emit_json(json const& doc, std::string const& path)
{
    if (path.empty()) return;
    if (path == "-") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
    out << doc.dump(2) << "\n";
}

std::string complex_str(ApComplex const& z, int digits = 30) { return z.str(digits); }

json value_json(ApComplex const& z)
{
    return {{"re", z.re().str(40)}, {"im", z.im().str(40)}, {"radius", decimal(z.err())}};
}

int cmd_field_info(i64 disc, std::string const& json_path)
{
    FieldParams f = make_field(disc);
    i64 h = class_number(f);
    std::cout << "d_K            " << f.disc << "\n"
              << "tau_K          (" << f.disc << " + sqrt(" << f.disc << "))/2\n"
              << "minimal poly   X^2 - (" << f.disc << ")X + " << f.tau_norm() << "\n"
              << "units          " << f.unit_count << "\n"
              << "class number   " << h << "\n";
    emit_json({{"schema_version", "1"},
               {"field_disc", f.disc},
               {"tau_K", "(" + std::to_string(f.disc) + " + sqrt(" + std::to_string(f.disc) + "))/2"},
               {"min_poly", {1, -f.disc, f.tau_norm()}},
               {"unit_count", f.unit_count},
               {"class_number", h}},
              json_path);
    return exit_ok;
}

int cmd_rayclass(i64 disc, i64 N, std::string const& json_path)
{
    FieldParams f = make_field(disc);
    RayClassGroup g(make_modulus(f, N));
    SubgroupView ring = ring_subgroup(g);
    SubgroupView hilb = hilbert_subgroup(g);
    std::string factors;
    json jf = json::array();
    for (int n : g.structure()) {
        factors += (factors.empty() ? "" : " x ") + ("Z/" + std::to_string(n));
        jf.push_back(n);
    }
    std::cout << "modulus        " << N << " O_K  (d_K = " << disc << ")\n"
              << "order          " << g.order() << "\n"
              << "structure      " << (factors.empty() ? "trivial" : factors) << "\n"
              << "ring subgroup  " << ring.order() << "\n"
              << "hilbert sub.   " << hilb.order() << "\n"
              << "h(O)           " << order_class_number(f, N) << "\n"
              << "characters     " << g.order() << "\n";
    json reps = json::array();
    for (int i = 0; i < g.order(); ++i) reps.push_back(g.reps()[i].str());
    emit_json({{"schema_version", "1"},
               {"field_disc", disc},
               {"modulus_N", N},
               {"order", g.order()},
               {"invariant_factors", jf},
               {"ring_subgroup_order", ring.order()},
               {"hilbert_subgroup_order", hilb.order()},
               {"ring_class_number", order_class_number(f, N)},
               {"character_count", g.order()},
               {"class_representatives", reps}},
              json_path);
    return exit_ok;
}

int cmd_invariant(i64 disc, i64 N, std::string const& family, std::optional<int> cls, Bits prec, std::string const& json_path)
{
    FieldParams f = make_field(disc);
    RayClassGroup g(make_modulus(f, N));
    Family fam;
    if (family == "fricke") fam = fricke_family(f);
    else if (family == "siegel") fam = siegel_family();
    else fail(ErrorCode::InvalidArgument, "family must be 'fricke' or 'siegel'");
    std::vector<int> which;
    if (cls) {
        if (*cls < 0 || *cls >= g.order()) fail(ErrorCode::InvalidArgument, "class index out of range");
        which.push_back(*cls);
    } else {
        for (int i = 0; i < g.order(); ++i) which.push_back(i);
    }
    json rows = json::array();
    std::cout << std::left << std::setw(6) << "class" << std::setw(26) << "representative" << std::setw(18) << "label"
              << "value (" << fam.name() << ")\n";
    for (int i : which) {
        InvariantValue iv = fricke_invariant(g, g.at(i), fam, prec);
        json row{{"class", i}, {"representative", g.rep(g.at(i)).str()}, {"label", iv.label.str()}, {"omega", value_json(iv.omega)}};
        if (fam.kind == FamilyKind::Siegel12N) {
            row["log_abs"] = iv.log_value.log_abs.str(40);
            row["arg"] = iv.log_value.arg.str(40);
            std::cout << std::setw(6) << i << std::setw(26) << g.rep(g.at(i)).str() << std::setw(18) << iv.label.str()
                      << "log|g| = " << iv.log_value.log_abs.str(30) << "\n";
        } else {
            row["value"] = value_json(iv.value);
            std::cout << std::setw(6) << i << std::setw(26) << g.rep(g.at(i)).str() << std::setw(18) << iv.label.str()
                      << complex_str(iv.value) << "\n";
        }
        rows.push_back(row);
    }
    emit_json({{"schema_version", "1"}, {"field_disc", disc}, {"modulus_N", N}, {"prec_bits", prec}, {"family", fam.name()}, {"values", rows}},
              json_path);
    return exit_ok;
}

std::string suite_name(Suite s)
{
    switch (s) {
    case Suite::Identities: return "identities";
    case Suite::Kronecker: return "kronecker";
    case Suite::Generation: return "generation";
    default: return "all";
    }
}

int cmd_verify(VerifyConfig const& cfg, std::string const& json_path)
{
    auto t0 = std::chrono::steady_clock::now();
    Report rep = run_verify(cfg);
    double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::cout << "verify d_K = " << cfg.disc << ", N = " << cfg.N << ", suite = " << suite_name(cfg.suite) << ", prec = " << cfg.prec
              << " bits\n";
    std::cout << std::left << std::setw(36) << "check" << std::setw(14) << "status" << std::setw(16) << "residual"
              << "margin\n";
    json checks = json::array();
    json timings = json::object();
    for (auto const& c : rep.checks) {
        std::cout << std::setw(36) << c.name << std::setw(14) << to_string(c.status) << std::setw(16) << decimal(c.residual, 4)
                  << decimal(c.margin, 4) << "\n";
        json details = json::object();
        for (auto const& [k, v] : c.details) details[k] = v;
        checks.push_back({{"name", c.name},
                          {"status", to_string(c.status)},
                          {"residual", decimal(c.residual)},
                          {"margin", decimal(c.margin)},
                          {"details", details}});
        timings[c.name] = static_cast<long long>(c.elapsed_ms);
    }
    timings["total"] = static_cast<long long>(total);
    bool ok = rep.all_pass();
    std::cout << (ok ? "all checks passed" : "some checks did not pass") << "\n";
    emit_json({{"schema_version", "1"},
               {"field_disc", cfg.disc},
               {"modulus_N", cfg.N},
               {"prec_bits", cfg.prec},
               {"suite", suite_name(cfg.suite)},
               {"norm_bound", cfg.trunc},
               {"checks", checks},
               {"timings_ms", timings}},
              json_path);
    return ok ? exit_ok : exit_check_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cmray: class field invariants over imaginary quadratic fields"};
    app.require_subcommand(1);

    i64 disc = 0, N = 0, trunc = 100000;
    Bits prec = default_prec_from_env();
    double tol = 1e-3;
    std::string json_path, suite = "all", family = "fricke";
    std::optional<int> cls;

    auto* fi = app.add_subcommand("field-info", "tau_K, minimal polynomial, units and class number");
    fi->add_option("--disc", disc, "fundamental discriminant d_K < 0")->required()->allow_extra_args(false);
    fi->add_option("--json", json_path, "write a JSON report to this path ('-' for stdout)");

    auto* rc = app.add_subcommand("rayclass", "ray class group modulo N O_K");
    rc->add_option("--disc", disc, "fundamental discriminant d_K < 0")->required();
    rc->add_option("--N", N, "modulus N > 1")->required();
    rc->add_option("--json", json_path, "write a JSON report to this path ('-' for stdout)");

    auto* iv = app.add_subcommand("invariant", "Fricke or Siegel-Ramachandra invariants of the classes");
    iv->add_option("--disc", disc, "fundamental discriminant d_K < 0")->required();
    iv->add_option("--N", N, "modulus N > 1")->required();
    iv->add_option("--family", family, "fricke | siegel");
    iv->add_option("--class", cls, "class index (default: all)");
    iv->add_option("--prec", prec, "working precision in bits");
    iv->add_option("--json", json_path, "write a JSON report to this path ('-' for stdout)");

    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("--disc", disc, "fundamental discriminant d_K < 0")->required();
    vf->add_option("--N", N, "modulus N > 1")->required();
    vf->add_option("--suite", suite, "identities | kronecker | generation | all");
    vf->add_option("--prec", prec, "working precision in bits (default CMRAY_PREC_BITS or 256)");
    vf->add_option("--trunc", trunc, "L-series norm bound B");
    vf->add_option("--tol", tol, "tolerance for the Kronecker residual");
    vf->add_option("--json", json_path, "write a JSON report to this path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (fi->parsed()) return cmd_field_info(disc, json_path);
        if (rc->parsed()) return cmd_rayclass(disc, N, json_path);
        if (iv->parsed()) return cmd_invariant(disc, N, family, cls, prec, json_path);
        VerifyConfig cfg{disc, N, parse_suite(suite), prec, trunc, tol};
        validate_config(cfg);
        return cmd_verify(cfg, json_path);
    } catch (Error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        bool runtime = e.code() == ErrorCode::PrecisionUnattainable || e.code() == ErrorCode::RHSZero;
        return runtime ? exit_check_failed : exit_usage;
    }
}
