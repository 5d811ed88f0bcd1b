#pragma once

// The verification suites run by `cmray verify`: each check yields a status,
// a residual, a margin and a few details. Deterministic for fixed inputs.

#include "cmray/fieldgen.hpp"
#include "cmray/limitformula.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cmray {

enum class Status { Pass, Fail, Inconclusive };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "inconclusive";
    }
}

/// Decimal string with a fixed number of significant digits.
inline std::string decimal(long double x, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Le", digits - 1, x);
    return buf;
}

struct Check {
    std::string name;
    Status status = Status::Fail;
    long double residual = 0;
    long double margin = 0;  // threshold / residual, or gap / radius for certificates
    std::map<std::string, std::string> details;
    double elapsed_ms = 0;
};

enum class Suite { Identities, Kronecker, Generation, All };

inline Suite parse_suite(std::string const& s)
{
    if (s == "identities") return Suite::Identities;
    if (s == "kronecker") return Suite::Kronecker;
    if (s == "generation") return Suite::Generation;
    if (s == "all") return Suite::All;
    fail(ErrorCode::InvalidArgument, "unknown suite '" + s + "'");
}

struct VerifyConfig {
    i64 disc = -7;
    i64 N = 5;
    Suite suite = Suite::All;
    Bits prec = default_precision;
    i64 trunc = 100000;
    double tol = 1e-3;
};

struct Report {
    VerifyConfig cfg;
    std::vector<Check> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.status == Status::Pass; });
    }
};

/// Tolerance 2^-(prec - slack) used by the high precision identities.
inline long double prec_tol(Bits prec, int slack) { return std::ldexp(1.0L, -static_cast<int>(prec) + slack); }

namespace detail {

inline Check threshold_check(std::string name, long double residual, long double tol)
{
    Check c;
    c.name = std::move(name);
    c.residual = residual;
    c.margin = residual > 0 ? tol / residual : std::numeric_limits<long double>::infinity();
    c.status = residual < tol ? Status::Pass : Status::Fail;
    c.details["tolerance"] = decimal(tol);
    return c;
}

/// Deterministic pseudo-random point of H with Im tau in [0.8, 1.6].
inline ApComplex sample_tau(std::mt19937_64& rng, Bits prec)
{
    std::uniform_int_distribution<int> d(0, 1000);
    mpq_class x(d(rng) - 500, 1000), y(800 + 4 * (d(rng) % 201), 1000);
    return ApComplex(x, y, prec + 32);
}

inline bool suite_has(Suite s, Suite part) { return s == Suite::All || s == part; }

inline bool xi_applicable(FieldParams const& f, i64 N)
{
    return std::gcd(N, i64{6}) == 1 && f.disc != -3 && f.disc != -4;
}

} // namespace detail

/// Pairs of inequivalent normalized labels of level N, first `limit` in lexicographic order.
inline std::vector<std::pair<FrickeLabel, FrickeLabel>> fricke_siegel_pairs(i64 N, std::size_t limit)
{
    std::vector<std::pair<FrickeLabel, FrickeLabel>> out;
    std::vector<FrickeLabel> labels;
    for (i64 a = 0; a < N; ++a) {
        for (i64 b = 0; b < N; ++b) {
            if (a == 0 && b == 0) continue;
            FrickeLabel v = normalize(make_label(mpq_class(a, N), mpq_class(b, N)));
            if (std::none_of(labels.begin(), labels.end(), [&](FrickeLabel const& w) { return w == v; })) labels.push_back(v);
        }
    }
    for (std::size_t i = 0; i < labels.size() && out.size() < limit; ++i) {
        for (std::size_t j = i + 1; j < labels.size() && out.size() < limit; ++j) {
            out.push_back({labels[i], labels[j]});
        }
    }
    return out;
}

inline Check check_fricke_siegel(FieldParams const& f, i64 N, Bits prec)
{
    ApComplex tau = tau_K(f, prec);
    long double worst = 0;
    auto pairs = fricke_siegel_pairs(N, 12);
    for (auto const& [u, v] : pairs) worst = std::max(worst, verify_fricke_siegel_identity(u, v, tau, prec));
    Check c = detail::threshold_check("fricke_siegel_identity", worst, prec_tol(prec, 56));
    c.details["pairs"] = std::to_string(pairs.size());
    return c;
}

inline Check check_wp_properties(Bits prec, unsigned long seed = 1)
{
    std::mt19937_64 rng(seed);
    long double worst = 0;
    for (int trial = 0; trial < 4; ++trial) {
        ApComplex tau = detail::sample_tau(rng, prec);
        std::uniform_int_distribution<int> d(1, 999);
        ApComplex z = tau * ApComplex(detail::rat(d(rng), 1000), mpq_class(0), prec + 32) + ApComplex(detail::rat(d(rng), 1000), mpq_class(0), prec + 32);
        ApComplex p = wp(z, tau, prec);
        worst = std::max(worst, relative_residual(wp(-z, tau, prec), p));
        worst = std::max(worst, relative_residual(wp(z + ApComplex(1L, z.prec()), tau, prec), p));
        worst = std::max(worst, relative_residual(wp(z + tau, tau, prec), p));
    }
    Check c = detail::threshold_check("weierstrass_even_periodic", worst, prec_tol(prec, 56));
    c.details["samples"] = "4";
    return c;
}

inline Check check_siegel_properties(i64 N, Bits prec, unsigned long seed = 2)
{
    std::mt19937_64 rng(seed);
    long double worst = 0;
    for (int trial = 0; trial < 4; ++trial) {
        ApComplex tau = detail::sample_tau(rng, prec);
        std::uniform_int_distribution<i64> d(0, N - 1);
        i64 a = d(rng), b = d(rng);
        if (a == 0 && b == 0) b = 1;
        FrickeLabel v = make_label(mpq_class(a, N), mpq_class(b, N));
        ApComplex base = pow(siegel_any(v, tau, prec), 12 * N);
        for (auto const& w : {make_label(-v.r1, -v.r2), make_label(v.r1 + 1, v.r2), make_label(v.r1, v.r2 + 1),
                              make_label(v.r1 - 2, v.r2 + 3)}) {
            worst = std::max(worst, relative_residual(pow(siegel_any(w, tau, prec), 12 * N), base));
        }
    }
    Check c = detail::threshold_check("siegel_12N_invariance", worst, prec_tol(prec, 56));
    c.details["samples"] = "4";
    return c;
}

inline Check check_delta(Bits prec, unsigned long seed = 3)
{
    std::mt19937_64 rng(seed);
    long double worst = 0;
    for (int trial = 0; trial < 4; ++trial) {
        ApComplex tau = detail::sample_tau(rng, prec);
        worst = std::max(worst, relative_residual(eval_g2g3_delta_j(tau, prec).delta, delta_product(tau, prec)));
    }
    return detail::threshold_check("delta_eisenstein_vs_product", worst, prec_tol(prec, 56));
}

inline Check check_well_definedness(RayClassGroup const& g, Bits prec)
{
    Family fam = fricke_family(g.field());
    long double worst = 0;
    for (int i = 0; i < g.order(); ++i) {
        RayClass C = g.at(i);
        ApComplex v0 = fricke_invariant(g, C, fam, prec).value;
        long double scale = std::max(1.0L, v0.mod_ld());
        worst = std::max(worst, distance(invariant_at_ideal(g, g.rep(C), fam, prec, false).value, v0) / scale);
        for (auto const& c : alternate_representatives(g, C, 1)) {
            if (!(g.class_of(c) == C)) fail(ErrorCode::InvalidArgument, "alternate representative left its class");
            worst = std::max(worst, distance(invariant_at_ideal(g, c, fam, prec).value, v0) / scale);
        }
    }
    Check c = detail::threshold_check("fricke_invariant_well_defined", worst, prec_tol(prec, 56));
    c.details["classes"] = std::to_string(g.order());
    c.details["choices_per_class"] = "3";
    return c;
}

inline Check check_xi_paths(FieldParams const& f, i64 N, Bits prec)
{
    XiResult x = xi_N_both(f, N, prec);
    long double rel = x.path_distance / x.weber_path.mod_ld();
    Check c = detail::threshold_check("xi_weber_vs_invariant", rel, prec_tol(prec, 16));
    c.details["abs_xi"] = decimal(x.weber_path.mod_ld(), 12);
    if (!x.weber_path.certainly_nonzero()) c.status = Status::Fail;
    return c;
}

inline Check check_norm_paths(FieldParams const& f, i64 N, Bits prec)
{
    NormProductResult r = norm_to_ring_class_both(f, N, prec);
    Check c = detail::threshold_check("norm_product_paths", r.path_distance / r.weber_path.mod_ld(), prec_tol(prec, 16));
    c.details["factors"] = std::to_string(half_units_mod(N).size());
    return c;
}

inline Check check_xi_power(FieldParams const& f, i64 N, Bits prec)
{
    return detail::threshold_check("xi_power_identity", xi_power_identity_check(f, N, prec), prec_tol(prec, 76));
}

/// Gauss sums of the primitive (conductor = f) nonprincipal characters.
inline Check check_gauss_sums(RayClassGroup const& g, Bits prec)
{
    long double worst = 0;
    int count = 0;
    AlgNum gamma = find_gamma(g);
    Real root = sqrt(Real(g.modulus().ideal.norm(), prec + 32));
    for (auto const& chi : characters(g)) {
        if (chi.is_principal() || !(chi.conductor == g.modulus().ideal)) continue;
        ApComplex T = gauss_sum(g, chi, gamma, prec);
        worst = std::max(worst, cmray::abs(T.abs() - root).to_ld());
        ++count;
    }
    Check c = detail::threshold_check("gauss_sum_modulus", worst, prec_tol(prec, 56));
    c.details["characters"] = std::to_string(count);
    c.details["gamma"] = gamma.str();
    if (count == 0) c.status = Status::Inconclusive;
    return c;
}

inline Check check_kronecker(RayClassGroup const& g, std::vector<Real> const& log_abs, i64 B, double tol, Bits prec)
{
    AnalyticConfig cfg{prec, B, 0};
    double worst = 0;
    int count = 0, vanishing = 0;
    long double scale = 0;
    for (auto const& x : log_abs) scale += std::fabs(x.to_ld());
    for (auto const& chi : characters(g)) {
        if (chi.is_principal() || chi.conductor_trivial()) continue;
        ++count;
        // an Euler factor 1 - conj chi_0(P) that is exactly 0 forces S_f(conj chi) = 0
        PrimitiveCharacter pc = primitive_character(g, chi);
        bool euler_zero = false;
        for (IdealHNF const& P : g.modulus_primes()) {
            if (!ideal_divides(P, chi.conductor) && pc.chi0.phase(pc.group.class_of(P)) == 0) euler_zero = true;
        }
        if (euler_zero) {
            ++vanishing;
            long double s = stickelberger(g, chi.conj(), log_abs, prec).mod_ld() / scale;
            worst = std::max(worst, static_cast<double>(s));
            continue;
        }
        worst = std::max(worst, kronecker_check(g, chi, cfg, log_abs).residual);
    }
    Check c = detail::threshold_check("kronecker_limit_formula", worst, tol);
    c.details["characters"] = std::to_string(count);
    c.details["euler_factor_zero"] = std::to_string(vanishing);
    c.details["norm_bound"] = std::to_string(B);
    if (count == 0) c.status = Status::Inconclusive;
    return c;
}

/// Characters found by the C1-C3 search, one per target class outside the ring subgroup.
inline std::vector<RayCharacter> c123_characters(RayClassGroup const& g)
{
    SubgroupView ring = ring_subgroup(g);
    std::vector<RayCharacter> out;
    for (int i = 0; i < g.order(); ++i) {
        if (ring.contains(i)) continue;
        RayCharacter chi = find_character_C1C2C3(g, ring, g.at(i));
        if (std::none_of(out.begin(), out.end(), [&](RayCharacter const& x) { return x.exponents == chi.exponents; }))
            out.push_back(chi);
    }
    return out;
}

inline Check check_stickelberger(RayClassGroup const& g, std::vector<Real> const& log_abs, Bits prec)
{
    long double smallest = std::numeric_limits<long double>::infinity();
    auto chars = c123_characters(g);
    for (auto const& chi : chars) smallest = std::min(smallest, stickelberger(g, chi.conj(), log_abs, prec).mod_ld());
    Check c;
    c.name = "stickelberger_nonvanishing";
    c.residual = smallest;
    c.margin = smallest / 1e-6L;
    c.status = smallest > 1e-6L ? Status::Pass : Status::Fail;
    c.details["characters"] = std::to_string(chars.size());
    c.details["threshold"] = decimal(1e-6L);
    return c;
}

inline Check certificate_check(std::string name, GenerationCertificate const& cert)
{
    Check c;
    c.name = std::move(name);
    c.residual = cert.coeff_recognition_residual;
    c.margin = cert.margin_ratio();
    c.status = cert.verdict == Verdict::Certified ? Status::Pass
               : cert.verdict == Verdict::Failed  ? Status::Fail
                                                  : Status::Inconclusive;
    c.details["verdict"] = to_string(cert.verdict);
    c.details["orbit_size"] = std::to_string(cert.orbit_size);
    c.details["expected_degree"] = std::to_string(cert.expected_degree);
    c.details["min_pairwise_gap"] = decimal(cert.min_pairwise_gap);
    c.details["max_error_radius"] = decimal(cert.max_error_radius);
    c.details["prec_bits"] = std::to_string(cert.prec);
    std::string tries;
    for (Bits b : cert.attempts) tries += (tries.empty() ? "" : ",") + std::to_string(b);
    c.details["precision_attempts"] = tries;
    if (cert.claim == Claim::TheoremRelativeNorm) c.details["coset_consistency"] = decimal(cert.coset_consistency);
    return c;
}

inline Check check_j_orbit(FieldParams const& f, i64 N, Bits prec)
{
    JOrbitCheck j = j_orbit_check(f, N, prec);
    i64 hO = order_class_number(f, N);
    Check c;
    c.name = "j_orbit_degree";
    c.residual = j.max_residual;
    c.margin = j.distinct == hO ? 1 : 0;
    c.status = (j.degree == hO && j.distinct == hO && j.integral) ? Status::Pass : Status::Fail;
    c.details["h_O"] = std::to_string(hO);
    c.details["distinct"] = std::to_string(j.distinct);
    c.details["integral_coefficients"] = j.integral ? "true" : "false";
    return c;
}

/// Configuration errors are thrown before any check runs.
inline void validate_config(VerifyConfig const& cfg)
{
    make_field(cfg.disc);
    if (cfg.N <= 1) fail(ErrorCode::ModulusTrivial, "modulus must be nontrivial (N > 1)");
    if (cfg.prec < 64 || cfg.prec > 4096) fail(ErrorCode::InvalidArgument, "precision must lie in [64, 4096] bits");
    if (cfg.trunc < 1000) fail(ErrorCode::InvalidArgument, "--trunc must be at least 1000");
    if (detail::suite_has(cfg.suite, Suite::Generation) && std::gcd(cfg.N, i64{6}) != 1)
        fail(ErrorCode::NNotCoprimeTo6, "N must be prime to 6 for the generation suite");
}

inline Report run_verify(VerifyConfig const& cfg)
{
    validate_config(cfg);
    Report rep{cfg, {}};
    FieldParams f = make_field(cfg.disc);
    i64 N = cfg.N;
    Bits prec = cfg.prec;
    RayClassGroup g(make_modulus(f, N));
    auto timed = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        Check c = fn();
        c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(c));
    };
    bool xi_ok = detail::xi_applicable(f, N);
    bool coprime6 = std::gcd(N, i64{6}) == 1;

    if (detail::suite_has(cfg.suite, Suite::Identities)) {
        timed([&] { return check_fricke_siegel(f, N, prec); });
        timed([&] { return check_wp_properties(prec); });
        timed([&] { return check_siegel_properties(N, prec); });
        timed([&] { return check_delta(prec); });
        timed([&] { return check_well_definedness(g, prec); });
        if (coprime6) timed([&] { return check_xi_paths(f, N, prec); });
        if (xi_ok) {
            timed([&] { return check_norm_paths(f, N, prec); });
            timed([&] { return check_xi_power(f, N, prec); });
        }
    }
    if (detail::suite_has(cfg.suite, Suite::Kronecker)) {
        std::vector<Real> log_abs = siegel_log_abs(g, prec);
        timed([&] { return check_gauss_sums(g, prec); });
        timed([&] { return check_kronecker(g, log_abs, cfg.trunc, cfg.tol, prec); });
        if (xi_ok) timed([&] { return check_stickelberger(g, log_abs, prec); });
    }
    if (detail::suite_has(cfg.suite, Suite::Generation)) {
        GenerationConfig gc{prec, true};
        timed([&] { return certificate_check("corollary_main_certificate", verify_corollary_main(f, N, gc)); });
        if (xi_ok) {
            timed([&] { return certificate_check("theorem_relativenorm_certificate", verify_theorem_relativenorm(f, N, gc)); });
            timed([&] { return check_j_orbit(f, N, prec); });
        }
    }
    return rep;
}

} // namespace cmray
