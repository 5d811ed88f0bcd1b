#pragma once

// Generation certificates: full Galois orbits of invariant values, their
// pairwise separation against the error radii, and recognition of the orbit
// polynomial's coefficients as elements a + b tau_K of K.

#include "cmray/forms.hpp"
#include "cmray/invariants.hpp"

#include <limits>
#include <string>
#include <vector>

namespace cmray {

constexpr long double certificate_margin = 1e3L;
constexpr Bits max_escalation_precision = 1024;

struct RecognizedCoeff {
    mpq_class a, b;        // coefficient = a + b tau_K
    bool recognized = false;
    long double residual = std::numeric_limits<long double>::infinity();
};

namespace detail {

inline mpq_class to_mpq(Real const& x)
{
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x.get());
    return q;
}

/// First continued fraction convergent p/q of x with q <= qmax and
/// |x - p/q| <= tol.
inline std::optional<mpq_class> rational_reconstruct(mpq_class x, mpz_class const& qmax, mpq_class const& tol)
{
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpq_class target = x;
    for (int it = 0; it < 4096; ++it) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) return std::nullopt;
        mpq_class c(p2, q2);
        c.canonicalize();
        if (abs(target - c) <= tol) return c;
        mpq_class frac = x - a;
        if (frac == 0) return std::nullopt;
        x = 1 / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

inline Radius max_radius(std::vector<ApComplex> const& v)
{
    Radius r = 0;
    for (auto const& z : v) r = std::max(r, z.err());
    return r;
}

inline long double min_gap(std::vector<ApComplex> const& v)
{
    long double g = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) g = std::min(g, distance(v[i], v[j]));
    }
    return g;
}

/// Number of clusters when values closer than `threshold` are identified.
inline int cluster_count(std::vector<ApComplex> const& v, long double threshold)
{
    std::vector<int> parent(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (distance(v[i], v[j]) <= threshold) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
        }
    }
    int n = 0;
    for (std::size_t i = 0; i < v.size(); ++i) n += find(static_cast<int>(i)) == static_cast<int>(i);
    return n;
}

} // namespace detail

/// Recognize z as a + b tau_K with rationals of denominator <= 2^(prec/4).
inline RecognizedCoeff recognize_in_K(FieldParams const& f, ApComplex const& z, Bits prec)
{
    Bits wp = z.prec();
    Real half_root = sqrt(Real(-f.disc, wp)) / 2L;
    Real b = z.im() / half_root;
    Real a = z.re() - b * Real(detail::rat(f.disc, 2), wp);
    mpz_class qmax;
    mpz_ui_pow_ui(qmax.get_mpz_t(), 2, prec / 4);
    // acceptance window: a few radii, but never looser than 2^(-3 prec/4)
    long double scale = 1.0L / half_root.to_ld() + std::fabs(static_cast<long double>(f.disc));
    long double radius_term = 1024 * z.err() * scale;
    long e = -static_cast<long>(3 * prec / 4);
    if (radius_term > 0) e = std::max(e, static_cast<long>(std::ceil(std::log2(radius_term))));
    mpq_class tol = 1;
    if (e < 0) mpz_ui_pow_ui(tol.get_den_mpz_t(), 2, -e);
    else mpz_ui_pow_ui(tol.get_num_mpz_t(), 2, e);
    auto ra = detail::rational_reconstruct(detail::to_mpq(a), qmax, tol);
    auto rb = detail::rational_reconstruct(detail::to_mpq(b), qmax, tol);
    RecognizedCoeff rc;
    if (!ra || !rb) return rc;
    rc.a = *ra;
    rc.b = *rb;
    rc.recognized = true;
    ApComplex back = embed(f, AlgNum(rc.a, rc.b), wp);
    rc.residual = distance(z, back);
    return rc;
}

struct OrbitPolynomial {
    std::vector<ApComplex> coefficients;  // monic, lowest degree first
    std::vector<RecognizedCoeff> recognized;
    long double max_residual = 0;
    bool all_recognized = true;
};

/// prod (X - v_i), each coefficient recognized in K.
inline OrbitPolynomial orbit_polynomial(FieldParams const& f, std::vector<ApComplex> const& values, Bits prec)
{
    if (values.empty()) fail(ErrorCode::InvalidArgument, "orbit polynomial of an empty list");
    Bits wp = values.front().prec();
    std::vector<ApComplex> c{ApComplex(1L, wp)};
    for (auto const& v : values) {
        std::vector<ApComplex> next(c.size() + 1, ApComplex(wp));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= c[k] * v;
        }
        c = std::move(next);
    }
    OrbitPolynomial op;
    op.coefficients = c;
    for (auto const& z : c) {
        auto rc = recognize_in_K(f, z, prec);
        op.all_recognized = op.all_recognized && rc.recognized;
        op.max_residual = std::max(op.max_residual, rc.residual);
        op.recognized.push_back(rc);
    }
    return op;
}

enum class Claim { CorollaryMain, TheoremRelativeNorm };
enum class Verdict { Certified, Failed, Inconclusive };

inline std::string to_string(Claim c) { return c == Claim::CorollaryMain ? "corollary_main" : "theorem_relativenorm"; }
inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Failed: return "failed";
    default: return "inconclusive";
    }
}

struct GenerationCertificate {
    Claim claim;
    i64 field_disc = 0;
    i64 N = 0;
    int orbit_size = 0;
    int expected_degree = 0;
    long double min_pairwise_gap = 0;
    long double max_error_radius = 0;
    long double coeff_recognition_residual = 0;
    Verdict verdict = Verdict::Failed;
    Bits prec = 0;
    std::vector<Bits> attempts;
    std::vector<ApComplex> values;
    OrbitPolynomial polynomial;
    long double coset_consistency = 0;  // theorem only: spread of products inside a coset

    long double margin_ratio() const { return max_error_radius > 0 ? min_pairwise_gap / max_error_radius : std::numeric_limits<long double>::infinity(); }
};

struct GenerationConfig {
    Bits prec = default_precision;
    bool escalate = true;
};

/// Classical normalizing constant of the Weber function for branch k
/// (-2^7 3^5, 2^8 3^4, -2^9 3^6). Rescaling by it keeps the generated field
/// and clears the 2- and 3-power denominators from the orbit polynomial.
inline long weber_normalization(int k)
{
    switch (k) {
    case 1: return -128L * 243L;
    case 2: return 256L * 81L;
    default: return -512L * 729L;
    }
}

namespace detail {

inline void judge(GenerationCertificate& c, FieldParams const& f, Bits prec, long scale = 1, int scale_power = 1)
{
    c.prec = prec;
    c.min_pairwise_gap = c.values.size() > 1 ? min_gap(c.values) : std::numeric_limits<long double>::infinity();
    c.max_error_radius = max_radius(c.values);
    c.orbit_size = cluster_count(c.values, 2 * c.max_error_radius);
    std::vector<ApComplex> scaled = c.values;
    for (auto& v : scaled) {
        for (int i = 0; i < scale_power; ++i) v *= scale;
    }
    c.polynomial = orbit_polynomial(f, scaled, prec);
    c.coeff_recognition_residual = c.polynomial.max_residual;
    long double res_bound = std::ldexp(1.0L, -static_cast<int>(prec / 4));
    if (c.orbit_size != c.expected_degree) {
        c.verdict = Verdict::Failed;
    } else if (!(c.min_pairwise_gap > certificate_margin * c.max_error_radius)) {
        c.verdict = Verdict::Inconclusive;
    } else if (!(c.coeff_recognition_residual < res_bound)) {
        c.verdict = Verdict::Inconclusive;
    } else {
        c.verdict = Verdict::Certified;
    }
}

template <class Attempt>
GenerationCertificate escalate(GenerationConfig const& cfg, Attempt attempt)
{
    Bits prec = cfg.prec;
    std::vector<Bits> tried;
    for (;;) {
        tried.push_back(prec);
        GenerationCertificate c = attempt(prec);
        c.attempts = tried;
        if (c.verdict != Verdict::Inconclusive || !cfg.escalate || prec * 2 > max_escalation_precision) return c;
        prec *= 2;
    }
}

} // namespace detail

/// The orbit {f_f(C) : C in Cl(f)} of h_E(phi_E(1/N)) must have |Cl(f)| distinct values.
inline GenerationCertificate verify_corollary_main(FieldParams const& f, i64 N, GenerationConfig const& cfg = {})
{
    detail::check_xi_hypotheses(f, N, false);
    RayClassGroup g(make_modulus(f, N));
    return detail::escalate(cfg, [&](Bits prec) {
        GenerationCertificate c;
        c.claim = Claim::CorollaryMain;
        c.field_disc = f.disc;
        c.N = N;
        c.expected_degree = g.order();
        for (auto const& iv : invariant_orbit(g, fricke_family(f), prec)) c.values.push_back(iv.value);
        detail::judge(c, f, prec, weber_normalization(weber_branch(f)));
        return c;
    });
}

/// Coset representatives of Cl(f) / ring subgroup, first class index of each coset.
inline std::vector<int> ring_coset_representatives(RayClassGroup const& g, SubgroupView const& ring)
{
    std::vector<char> covered(g.order(), 0);
    std::vector<int> reps;
    auto members = ring.members();
    for (int i = 0; i < g.order(); ++i) {
        if (covered[i]) continue;
        reps.push_back(i);
        for (int m : members) covered[g.index(g.mul(g.at(i), g.at(m)))] = 1;
    }
    return reps;
}

/// The conjugates of N_{K_f/K_O}(xi_N) over K, one per ring class, must be
/// h(O) distinct values.
inline GenerationCertificate verify_theorem_relativenorm(FieldParams const& f, i64 N, GenerationConfig const& cfg = {})
{
    detail::check_xi_hypotheses(f, N, true);
    RayClassGroup g(make_modulus(f, N));
    SubgroupView ring = ring_subgroup(g);
    auto cosets = ring_coset_representatives(g, ring);
    int hO = static_cast<int>(order_class_number(f, N));
    return detail::escalate(cfg, [&](Bits prec) {
        GenerationCertificate c;
        c.claim = Claim::TheoremRelativeNorm;
        c.field_disc = f.disc;
        c.N = N;
        c.expected_degree = hO;
        auto orbit = invariant_orbit(g, fricke_family(f), prec);
        long double spread = 0;
        for (int e : cosets) {
            ApComplex v = norm_product_from_orbit(g, orbit, g.at(e));
            for (int s : ring.members()) {
                ApComplex w = norm_product_from_orbit(g, orbit, g.mul(g.at(e), g.at(s)));
                spread = std::max(spread, distance(v, w));
            }
            c.values.push_back(v);
        }
        c.coset_consistency = spread;
        detail::judge(c, f, prec, weber_normalization(weber_branch(f)), static_cast<int>(half_units_mod(N).size()));
        return c;
    });
}

/// j(N tau_K) and its conjugates over K: j at the reduced forms of
/// discriminant N^2 d_K. The orbit polynomial has rational integer coefficients.
struct JOrbitCheck {
    int degree = 0;
    int distinct = 0;
    bool integral = false;
    long double max_residual = 0;
    Bits prec = 0;
};

inline JOrbitCheck j_orbit_check(FieldParams const& f, i64 N, Bits prec = default_precision)
{
    JOrbitCheck out;
    for (Bits p = prec;; p *= 2) {
        auto forms = reduced_forms(detail::mul(detail::mul(N, N), f.disc));
        std::vector<ApComplex> vals;
        i64 D = detail::mul(detail::mul(N, N), f.disc);
        for (auto const& q : forms) {
            Bits wp = p + 32;
            Real re(detail::rat(-q.b, 2 * q.a), wp);
            Real im = sqrt(Real(-D, wp)) / Real(2 * q.a, wp);
            ApComplex tau(re, im, detail::rounding_radius(1, wp));
            vals.push_back(eval_g2g3_delta_j(tau, p).j);
        }
        out.degree = static_cast<int>(vals.size());
        out.distinct = detail::cluster_count(vals, 2 * detail::max_radius(vals));
        OrbitPolynomial op = orbit_polynomial(f, vals, p);
        out.integral = op.all_recognized;
        for (auto const& rc : op.recognized) out.integral = out.integral && rc.b == 0 && rc.a.get_den() == 1;
        out.max_residual = op.max_residual;
        out.integral = out.integral && out.max_residual < std::ldexp(1.0L, -static_cast<int>(p / 4));
        out.prec = p;
        if (out.integral || p * 2 > max_escalation_precision) return out;
    }
}

} // namespace cmray
