#pragma once

// Fricke invariants h_f(C) = h_[r1;r2](w1/w2) where f c^-1 = [w1, w2] and
// 1 = r1 w1 + r2 w2, Siegel-Ramachandra invariants g_f(C), the difference
// xi_N and its relative norm down to the ring class field.

#include "cmray/modfun.hpp"
#include "cmray/rayclass.hpp"

#include <optional>
#include <vector>

namespace cmray {

enum class FamilyKind { Fricke, Siegel12N };

struct Family {
    FamilyKind kind = FamilyKind::Fricke;
    int k = 1;  // Fricke branch, ignored for Siegel12N

    std::string name() const { return kind == FamilyKind::Fricke ? "fricke_" + std::to_string(k) : "siegel_12N"; }
};

/// The Fricke family matching the Weber function of K.
inline Family fricke_family(FieldParams const& f) { return {FamilyKind::Fricke, weber_branch(f)}; }
inline Family siegel_family() { return {FamilyKind::Siegel12N, 0}; }

struct InvariantValue {
    RayClass class_id;
    Family family;
    ApComplex value;
    FrickeLabel label;
    ApComplex omega;
    LogValue log_value;  // filled for Siegel12N: log g_f(C)
};

/// The data (label, omega) attached to an integral ideal c prime to f.
struct LatticeData {
    FrickeLabel label;
    AlgNum w1, w2;
};

inline LatticeData lattice_data(Modulus const& m, IdealHNF const& c, bool reduce = true)
{
    FieldParams const& f = m.field;
    IdealHNF fc = ideal_mul(f, m.ideal, ideal_inverse(f, c));
    auto [w1, w2] = zbasis_oriented(f, fc);
    if (reduce) std::tie(w1, w2) = reduce_basis(f, w1, w2);
    // 1 = r1 w1 + r2 w2, coordinates in the basis (1, tau)
    mpq_class det = w1.a * w2.b - w2.a * w1.b;
    mpq_class r1 = w2.b / det;
    mpq_class r2 = -w1.b / det;
    if (r1 * w1.a + r2 * w2.a != 1 || r1 * w1.b + r2 * w2.b != 0)
        fail(ErrorCode::InvalidArgument, "linear solve for the label failed");
    mpz_class n(m.N);
    if (n % mpz_class(r1.get_den()) != 0 || n % mpz_class(r2.get_den()) != 0)
        fail(ErrorCode::DenominatorNotDividingN, "label (" + r1.get_str() + ", " + r2.get_str() + ") not in (1/N)Z^2");
    FrickeLabel v{r1, r2, m.N};
    return {v, w1, w2};
}

/// Evaluate the family at the class of the integral ideal c (prime to f).
inline InvariantValue invariant_at_ideal(RayClassGroup const& g, IdealHNF const& c, Family fam, Bits prec = default_precision,
                                         bool reduce = true)
{
    FieldParams const& f = g.field();
    if (!c.is_integral() || !g.prime_to_modulus(c)) fail(ErrorCode::InvalidArgument, "representative must be integral and prime to f");
    LatticeData ld = lattice_data(g.modulus(), c, reduce);
    AlgNum w = f.div(ld.w1, ld.w2);
    ApComplex omega = embed(f, w, prec + 16);
    InvariantValue iv{g.class_of(c), fam, ApComplex(prec), ld.label, omega, LogValue{Real(prec), Real(prec), 0}};
    if (fam.kind == FamilyKind::Fricke) {
        iv.value = fricke(fam.k, ld.label, omega, prec);
    } else {
        // the label's N is that of f, as in g_v^{12N}
        FrickeLabel v = ld.label;
        v.N = g.modulus().N;
        iv.log_value = siegel_pow_log(v, omega, prec);
        iv.value = iv.log_value.exp_value();
    }
    return iv;
}

inline InvariantValue fricke_invariant(RayClassGroup const& g, RayClass const& C, Family fam, Bits prec = default_precision)
{
    return invariant_at_ideal(g, g.rep(C), fam, prec);
}

/// h_f(C)^{sigma(C')} = h_f(C C').
inline InvariantValue galois_translate(RayClassGroup const& g, RayClass const& C, RayClass const& Cp, Family fam,
                                       Bits prec = default_precision)
{
    return fricke_invariant(g, g.mul(C, Cp), fam, prec);
}

/// Values for every class, in class index order.
inline std::vector<InvariantValue> invariant_orbit(RayClassGroup const& g, Family fam, Bits prec = default_precision)
{
    std::vector<InvariantValue> out;
    out.reserve(g.order());
    for (int i = 0; i < g.order(); ++i) out.push_back(fricke_invariant(g, g.at(i), fam, prec));
    return out;
}

/// Alternative representatives c * (alpha), alpha == 1 mod f, for the
/// well-definedness checks.
inline std::vector<IdealHNF> alternate_representatives(RayClassGroup const& g, RayClass const& C, int count)
{
    FieldParams const& f = g.field();
    IdealHNF const& c = g.rep(C);
    std::vector<IdealHNF> out;
    i64 N = g.modulus().N;
    std::vector<AlgNum> alphas{AlgNum(1, N), AlgNum(1 - N, N), AlgNum(1 + N, -N), AlgNum(1 + N, 0), AlgNum(1, 2 * N)};
    for (auto const& a : alphas) {
        if (static_cast<int>(out.size()) >= count) break;
        out.push_back(ideal_mul(f, c, principal_ideal(f, a)));
    }
    return out;
}

namespace detail {

inline void check_xi_hypotheses(FieldParams const& f, i64 N, bool exclude_exceptional)
{
    if (N <= 1) fail(ErrorCode::ModulusTrivial, "N must exceed 1");
    if (std::gcd(N, i64{6}) != 1) fail(ErrorCode::NNotCoprimeTo6, "N must be prime to 6 (N = " + std::to_string(N) + ")");
    if (exclude_exceptional && (f.disc == -3 || f.disc == -4))
        fail(ErrorCode::ExceptionalField, "K must differ from Q(sqrt(-1)) and Q(sqrt(-3))");
}

inline FrickeLabel weber_label(i64 num, i64 N) { return make_label(mpq_class(0), mpq_class(num, N)); }

} // namespace detail

struct XiResult {
    ApComplex weber_path;
    ApComplex invariant_path;
    long double path_distance;
};

/// xi_N = h_E(phi_E(2/N)) - h_E(phi_E(1/N)) by both routes.
inline XiResult xi_N_both(FieldParams const& f, i64 N, Bits prec = default_precision)
{
    detail::check_xi_hypotheses(f, N, false);
    ApComplex w = weber_value(f, detail::weber_label(2, N), prec) - weber_value(f, detail::weber_label(1, N), prec);
    RayClassGroup g(make_modulus(f, N));
    Family fam = fricke_family(f);
    ApComplex v = fricke_invariant(g, g.class_of_element(AlgNum(2)), fam, prec).value
                  - fricke_invariant(g, g.identity(), fam, prec).value;
    return {w, v, distance(w, v)};
}

inline ApComplex xi_N(FieldParams const& f, i64 N, Bits prec = default_precision) { return xi_N_both(f, N, prec).weber_path; }

/// t in [1, N/2] prime to N: representatives of (Z/N)^x / +-1.
inline std::vector<i64> half_units_mod(i64 N)
{
    std::vector<i64> out;
    for (i64 t = 1; 2 * t < N; ++t) {
        if (std::gcd(t, N) == 1) out.push_back(t);
    }
    return out;
}

/// prod_t (f_f([2t O_K] E) - f_f([t O_K] E)) from precomputed orbit values.
inline ApComplex norm_product_from_orbit(RayClassGroup const& g, std::vector<InvariantValue> const& orbit, RayClass const& E)
{
    i64 N = g.modulus().N;
    ApComplex prod(1L, orbit.front().value.prec());
    for (i64 t : half_units_mod(N)) {
        RayClass Ct = g.mul(g.class_of_element(AlgNum(static_cast<long>(t))), E);
        RayClass C2t = g.mul(g.class_of_element(AlgNum(static_cast<long>(2 * t))), E);
        prod *= orbit.at(g.index(C2t)).value - orbit.at(g.index(Ct)).value;
    }
    return prod;
}

struct NormProductResult {
    ApComplex invariant_path;
    ApComplex weber_path;
    long double path_distance;
};

/// N_{K_f/K_O}(xi_N) via Fricke invariants and via Weber labels [0; t/N].
inline NormProductResult norm_to_ring_class_both(FieldParams const& f, i64 N, Bits prec = default_precision)
{
    detail::check_xi_hypotheses(f, N, true);
    RayClassGroup g(make_modulus(f, N));
    Family fam = fricke_family(f);
    ApComplex inv(1L, prec), web(1L, prec);
    for (i64 t : half_units_mod(N)) {
        i64 t2 = detail::mod(2 * t, N);
        inv *= fricke_invariant(g, g.class_of_element(AlgNum(static_cast<long>(t2))), fam, prec).value
               - fricke_invariant(g, g.class_of_element(AlgNum(static_cast<long>(t))), fam, prec).value;
        web *= weber_value(f, detail::weber_label(t2, N), prec) - weber_value(f, detail::weber_label(t, N), prec);
    }
    return {inv, web, distance(inv, web)};
}

inline ApComplex norm_to_ring_class(FieldParams const& f, i64 N, Bits prec = default_precision)
{
    return norm_to_ring_class_both(f, N, prec).invariant_path;
}

/// Log-domain residual of
/// xi_N^{12N} = (j^2 (j - 1728)^3 / 2^30 3^24)^{2N} g_f(C3) / (g_f(C2)^2 g_f(C0)).
inline long double xi_power_identity_check(FieldParams const& f, i64 N, Bits prec = default_precision)
{
    detail::check_xi_hypotheses(f, N, true);
    ApComplex xi = xi_N(f, N, prec);
    if (!xi.certainly_nonzero()) fail(ErrorCode::PrecisionUnattainable, "xi_N not separated from zero");
    LogValue lhs = to_log(xi).scaled(12 * N);

    ModularValues mv = eval_g2g3_delta_j(tau_K(f, prec), prec);
    Bits wp = mv.j.prec();
    mpz_class c30, c24;
    mpz_ui_pow_ui(c30.get_mpz_t(), 2, 30);
    mpz_ui_pow_ui(c24.get_mpz_t(), 3, 24);
    ApComplex jj = square(mv.j) * pow(mv.j - ApComplex(1728L, wp), 3) / ApComplex(Real(mpz_class(c30 * c24), wp), Real(wp));
    LogValue J = to_log(jj).scaled(2 * N);

    RayClassGroup g(make_modulus(f, N));
    Family fam = siegel_family();
    LogValue l0 = fricke_invariant(g, g.identity(), fam, prec).log_value;
    LogValue l2 = fricke_invariant(g, g.class_of_element(AlgNum(2)), fam, prec).log_value;
    LogValue l3 = fricke_invariant(g, g.class_of_element(AlgNum(3)), fam, prec).log_value;
    LogValue rhs{J.log_abs + l3.log_abs - l2.log_abs * 2L - l0.log_abs, J.arg + l3.arg - l2.arg * 2L - l0.arg,
                 J.err + l3.err + 2 * l2.err + l0.err};
    rhs.reduce_arg();
    LogValue diff{lhs.log_abs - rhs.log_abs, lhs.arg - rhs.arg, 0};
    diff.reduce_arg();
    // |e^diff - 1| is the relative residual of the two sides
    return (diff.exp_value() - ApComplex(1L, diff.arg.prec())).mod_ld();
}

} // namespace cmray
