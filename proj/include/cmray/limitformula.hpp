#pragma once

// Stickelberger elements, Hecke L-values at s = 1, Gauss sums and the second
// Kronecker limit formula relating them.

#include "cmray/invariants.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace cmray {

using cplx = std::complex<double>;

struct AnalyticConfig {
    Bits prec = default_precision;
    i64 norm_bound = 100000;  // B
    i64 window = 0;           // W, 0 = B / 20

    i64 effective_window() const { return window > 0 ? window : std::max<i64>(10, norm_bound / 20); }
    void validate() const
    {
        if (norm_bound < 1000) fail(ErrorCode::InvalidArgument, "norm bound B must be at least 1000");
        i64 w = effective_window();
        if (w < 10 || 10 * w >= norm_bound) fail(ErrorCode::InvalidArgument, "window W must satisfy 10 <= W < B/10");
    }
};

inline cplx to_cplx(ApComplex const& z) { return {z.re().to_double(), z.im().to_double()}; }

/// ln|g_f(C)| for every class, in class index order.
inline std::vector<Real> siegel_log_abs(RayClassGroup const& g, Bits prec = default_precision)
{
    std::vector<Real> out;
    for (auto const& iv : invariant_orbit(g, siegel_family(), prec)) out.push_back(iv.log_value.log_abs);
    return out;
}

/// S_f(chi) = sum_C chi(C) ln|g_f(C)| from precomputed log magnitudes.
inline ApComplex stickelberger(RayClassGroup const& g, RayCharacter const& chi, std::vector<Real> const& log_abs, Bits prec)
{
    if (chi.is_principal()) fail(ErrorCode::PrincipalCharacter, "Stickelberger element needs a nonprincipal character");
    Bits wp = log_abs.front().prec();
    ApComplex s(wp);
    for (int i = 0; i < g.order(); ++i) s += chi.value(g.at(i), wp) * log_abs[i];
    (void)prec;
    return s;
}

inline ApComplex stickelberger(RayClassGroup const& g, RayCharacter const& chi, Bits prec = default_precision)
{
    if (chi.is_principal()) fail(ErrorCode::PrincipalCharacter, "Stickelberger element needs a nonprincipal character");
    return stickelberger(g, chi, siegel_log_abs(g, prec), prec);
}

/// The primitive character chi_0 on Cl(f_chi) induced by chi on Cl(f).
struct PrimitiveCharacter {
    RayClassGroup group;  // Cl(f_chi)
    RayCharacter chi0;
};

inline PrimitiveCharacter primitive_character(RayClassGroup const& g, RayCharacter const& chi)
{
    if (chi.conductor_trivial()) fail(ErrorCode::InvalidArgument, "character has trivial conductor");
    FieldParams const& f = g.field();
    RayClassGroup gc(make_modulus(f, chi.conductor));
    // chi_0([a]_fchi) = chi([a]_f) for a prime to f; find such a in every class of Cl(f_chi)
    std::vector<mpq_class> phase(gc.order());
    std::vector<char> seen(gc.order(), 0);
    int found = 0;
    for (i64 n = 1; found < gc.order(); ++n) {
        if (n > 1000000) fail(ErrorCode::SearchExhausted, "could not represent every class of Cl(f_chi)");
        for (auto const& a : ideals_of_norm(f, n)) {
            if (!g.prime_to_modulus(a)) continue;
            int idx = gc.index(gc.class_of(a));
            mpq_class ph = chi.phase(g.class_of(a));
            if (seen[idx]) {
                if (phase[idx] != ph) fail(ErrorCode::InvalidArgument, "character does not factor through its conductor");
                continue;
            }
            seen[idx] = 1;
            phase[idx] = ph;
            ++found;
        }
    }
    std::vector<int> exps(gc.structure().size());
    for (std::size_t k = 0; k < exps.size(); ++k) {
        std::vector<int> e(exps.size(), 0);
        e[k] = 1;
        mpq_class x = phase[gc.index(RayClass{e})] * gc.structure()[k];
        if (x.get_den() != 1) fail(ErrorCode::InvalidArgument, "inconsistent character values on Cl(f_chi)");
        exps[k] = static_cast<int>(x.get_num().get_si());
    }
    RayCharacter chi0 = make_character(gc, exps);
    for (int i = 0; i < gc.order(); ++i) {
        if (chi0.phase(gc.at(i)) != phase[i]) fail(ErrorCode::InvalidArgument, "chi_0 is not a homomorphism");
    }
    return {std::move(gc), std::move(chi0)};
}

struct LValue {
    cplx value;
    double error_estimate;
};

namespace detail {

inline std::vector<std::uint32_t> smallest_prime_factors(i64 B)
{
    std::vector<std::uint32_t> spf(B + 1, 0);
    for (i64 i = 2; i <= B; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= B; j += i) {
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
        }
    }
    return spf;
}

inline cplx unit_value(mpq_class const& phase)
{
    double t = 2 * 3.14159265358979323846 * phase.get_d();
    return {std::cos(t), std::sin(t)};
}

} // namespace detail

/// sum over integral ideals a prime to f_chi of chi_0([a]) / N(a), truncated
/// at N(a) <= B and smoothed by averaging the last W partial sums.
inline LValue hecke_L_at_1(RayClassGroup const& gc, RayCharacter const& chi0, AnalyticConfig const& cfg)
{
    cfg.validate();
    if (chi0.is_principal()) fail(ErrorCode::PrincipalCharacter, "L(1, chi) diverges for the principal character");
    FieldParams const& f = gc.field();
    i64 B = cfg.norm_bound, W = cfg.effective_window();
    auto spf = detail::smallest_prime_factors(B);
    auto chi_of = [&](IdealHNF const& P) -> cplx {
        if (!gc.prime_to_modulus(P)) return 0.0;
        return detail::unit_value(chi0.phase(gc.class_of(P)));
    };
    // a(p^k) for each prime p <= B
    std::vector<std::vector<cplx>> local(B + 1);
    for (i64 p = 2; p <= B; ++p) {
        if (spf[p] != p) continue;
        int kmax = 0;
        for (i64 q = p; q <= B; q *= p) {
            ++kmax;
            if (q > B / p) break;
        }
        std::vector<cplx> a(kmax + 1);
        a[0] = 1;
        auto fac = factor_rational_prime(f, p);
        if (fac.kind == Splitting::Split) {
            cplx x = chi_of(fac.primes[0].first), y = chi_of(fac.primes[1].first);
            for (int k = 1; k <= kmax; ++k) a[k] = a[k - 1] * y + std::pow(x, k);
        } else if (fac.kind == Splitting::Inert) {
            cplx x = chi_of(fac.primes[0].first);
            for (int k = 1; k <= kmax; ++k) a[k] = (k % 2) ? cplx(0) : std::pow(x, k / 2);
        } else {
            cplx x = chi_of(fac.primes[0].first);
            for (int k = 1; k <= kmax; ++k) a[k] = std::pow(x, k);
        }
        local[p] = std::move(a);
    }
    std::vector<cplx> coef(B + 1);
    coef[1] = 1;
    cplx partial = 1;
    cplx window_sum = 0, first_half = 0, second_half = 0;
    i64 start = B - W + 1;
    for (i64 n = 2; n <= B; ++n) {
        i64 p = spf[n], m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        coef[n] = local[p][k] * coef[m];
        partial += coef[n] / static_cast<double>(n);
        if (n >= start) {
            window_sum += partial;
            if (n < start + W / 2) first_half += partial;
            else second_half += partial;
        }
    }
    double h1 = static_cast<double>(W / 2), h2 = static_cast<double>(W - W / 2);
    cplx avg = window_sum / static_cast<double>(W);
    return {avg, std::abs(first_half / h1 - second_half / h2)};
}

/// T_gamma(conj chi_0) = sum over x in (O/f_chi)^x of conj chi_0([x]) e^{2 pi i Tr(x gamma)}.
inline bool gamma_valid(RayClassGroup const& gc, AlgNum const& gamma)
{
    if (gamma.is_zero()) return false;
    FieldParams const& f = gc.field();
    IdealHNF x = ideal_mul(f, ideal_mul(f, principal_ideal(f, gamma), different_ideal(f)), gc.modulus().ideal);
    return x.is_integral() && !x.is_unit() && gc.prime_to_modulus(x);
}

inline ApComplex gauss_sum(RayClassGroup const& gc, RayCharacter const& chi0, AlgNum const& gamma, Bits prec = default_precision)
{
    if (!gamma_valid(gc, gamma)) fail(ErrorCode::GammaInvalid, "gamma d_K f_chi must be a nontrivial integral ideal prime to f_chi");
    FieldParams const& f = gc.field();
    Bits wp = prec + 32;
    ApComplex s(wp);
    for (AlgNum const& x : gc.unit_residues()) {
        mpq_class ph = -chi0.phase(gc.class_of_element(x)) + f.trace(f.mul(x, gamma));
        s += ApComplex::unit_root(ph, wp);
    }
    return s;
}

/// Deterministic search for gamma = beta / (delta M), delta = 2 tau - d, by height of beta.
inline AlgNum find_gamma(RayClassGroup const& gc)
{
    FieldParams const& f = gc.field();
    AlgNum delta(-f.disc, 2);
    i64 N = gc.modulus().N;
    int tried = 0;
    for (i64 h = 1;; ++h) {
        for (i64 M = 1; M <= N; ++M) {
            for (i64 x = -h; x <= h; ++x) {
                for (i64 y = -h; y <= h; ++y) {
                    if (std::max(std::llabs(x), std::llabs(y)) != h && !(h == 1 && x == 0 && y == 0)) continue;
                    if (x == 0 && y == 0) continue;
                    if (++tried > 10000) fail(ErrorCode::SearchExhausted, "no valid gamma within 10^4 candidates");
                    AlgNum gamma = detail::rat(1, M) * f.div(AlgNum(x, y), delta);
                    if (gamma_valid(gc, gamma)) return gamma;
                }
            }
        }
    }
}

/// prod over primes P | f, P not dividing f_chi, of (1 - conj chi_0([P])).
inline ApComplex euler_factor(RayClassGroup const& g, PrimitiveCharacter const& pc, Bits prec = default_precision)
{
    ApComplex prod(1L, prec);
    for (IdealHNF const& P : g.modulus_primes()) {
        if (ideal_divides(P, pc.group.modulus().ideal)) continue;
        prod *= ApComplex(1L, prec) - pc.chi0.conj().value(pc.group.class_of(P), prec);
    }
    return prod;
}

/// #{units u : u == 1 mod f}.
inline int unit_count_mod(FieldParams const& f, IdealHNF const& m)
{
    int n = 0;
    for (AlgNum const& u : f.units()) {
        if (ideal_contains(m, u - AlgNum(1))) ++n;
    }
    return n;
}

struct KroneckerResult {
    cplx lhs;
    cplx rhs;
    double residual;
    double l_error;
    AlgNum gamma;
    ApComplex gauss;
    ApComplex stickel;  // S_f(conj chi)
};

inline KroneckerResult kronecker_check(RayClassGroup const& g, RayCharacter const& chi, AnalyticConfig const& cfg,
                                       std::vector<Real> const& log_abs, std::optional<AlgNum> gamma_opt = std::nullopt)
{
    if (chi.is_principal()) fail(ErrorCode::PrincipalCharacter, "Kronecker check needs a nonprincipal character");
    if (chi.conductor_trivial()) fail(ErrorCode::InvalidArgument, "Kronecker check needs f_chi != O_K");
    FieldParams const& f = g.field();
    Bits prec = cfg.prec;
    PrimitiveCharacter pc = primitive_character(g, chi);
    RayClassGroup const& gc = pc.group;
    LValue L = hecke_L_at_1(gc, pc.chi0, cfg);
    cplx lhs = L.value * to_cplx(euler_factor(g, pc, prec));

    AlgNum gamma = gamma_opt ? *gamma_opt : find_gamma(gc);
    ApComplex T = gauss_sum(gc, pc.chi0, gamma, prec);
    IdealHNF gdf = ideal_mul(f, ideal_mul(f, principal_ideal(f, gamma), different_ideal(f)), gc.modulus().ideal);
    ApComplex chi_gdf = pc.chi0.value(gc.class_of(gdf), prec);
    ApComplex S = stickelberger(g, chi.conj(), log_abs, prec);
    Bits wp = S.prec();
    // ln|g_f| carries the exponent 12 N(f), so the scale is N(f) rather than N(f_chi)
    Real denom = Real(sqrt(Real(-f.disc, wp))) * (3 * g.modulus().N * unit_count_mod(f, gc.modulus().ideal));
    ApComplex rhs = -(chi_gdf * S * Real::pi(wp)) / (T * denom);
    if (!rhs.certainly_nonzero()) fail(ErrorCode::RHSZero, "right side of the limit formula vanished");
    cplx r = to_cplx(rhs);
    return {lhs, r, std::abs(lhs - r) / std::abs(r), L.error_estimate, gamma, T, S};
}

inline KroneckerResult kronecker_check(RayClassGroup const& g, RayCharacter const& chi, AnalyticConfig const& cfg)
{
    return kronecker_check(g, chi, cfg, siegel_log_abs(g, cfg.prec));
}

} // namespace cmray
