#pragma once

// q-series evaluation of g2, g3, Delta, j, the Weierstrass p-function, the
// Fricke functions f^(k)_v and the Siegel functions g_v on the lattice
// [tau, 1]. Every series stops once a computed bound on its tail drops below
// 2^-(wp + 32) relative to the working precision wp, and that bound is folded
// into the returned error radius.

#include "cmray/apcomplex.hpp"
#include "cmray/errors.hpp"
#include "cmray/qfield.hpp"

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

namespace cmray {

constexpr Bits default_precision = 256;

/// A torsion label v = (r1, r2) in Q^2 \ Z^2 with primitive denominator N.
struct FrickeLabel {
    mpq_class r1;
    mpq_class r2;
    long N = 1;

    friend bool operator==(FrickeLabel const& x, FrickeLabel const& y) { return x.r1 == y.r1 && x.r2 == y.r2; }
    std::string str() const { return "[" + r1.get_str() + "; " + r2.get_str() + "]"; }
};

namespace detail {

inline mpq_class frac(mpq_class const& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - fl;
}

inline mpz_class floor_q(mpq_class const& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return fl;
}

} // namespace detail

inline FrickeLabel make_label(mpq_class r1, mpq_class r2)
{
    r1.canonicalize();
    r2.canonicalize();
    if (r1.get_den() == 1 && r2.get_den() == 1) fail(ErrorCode::InvalidLabel, "label (" + r1.get_str() + ", " + r2.get_str() + ") lies in Z^2");
    mpz_class n = lcm(mpz_class(r1.get_den()), mpz_class(r2.get_den()));
    return {r1, r2, detail::to_i64(n)};
}

/// Representative of +-v mod Z^2 in [0,1)^2, the lexicographically smaller of v and -v.
inline FrickeLabel normalize(FrickeLabel const& v)
{
    FrickeLabel p{detail::frac(v.r1), detail::frac(v.r2), v.N};
    FrickeLabel m{detail::frac(-v.r1), detail::frac(-v.r2), v.N};
    if (m.r1 < p.r1 || (m.r1 == p.r1 && m.r2 < p.r2)) return m;
    return p;
}

inline bool labels_equivalent(FrickeLabel const& u, FrickeLabel const& v) { return normalize(u) == normalize(v); }

struct ModularValues {
    ApComplex g2, g3, delta, j;
};

namespace detail {

inline ApComplex two_pi_i_times(ApComplex const& z) { return i_pi_times(z) * 2L; }

inline void check_upper_half_plane(ApComplex const& tau)
{
    if (!(tau.im().to_ld() > tau.err()) || tau.im().sign() <= 0)
        fail(ErrorCode::NotInUpperHalfPlane, "Im(tau) must be positive, got tau = " + tau.str(10));
}

/// |q| = exp(-2 pi Im tau) as a long double upper bound.
inline long double q_abs_bound(ApComplex const& tau)
{
    long double y = tau.im().to_ld() - tau.err();
    return std::exp(-2.0L * 3.14159265358979323846L * y) * (1.0L + 1e-12L);
}

inline void check_terms(long double qabs, Bits wp)
{
    // terms needed ~ wp ln 2 / -ln|q|
    long double need = (wp + 64) * 0.6931471805599453L / -std::log(qabs);
    if (!(qabs < 1.0L) || need > 200000.0L)
        fail(ErrorCode::PrecisionUnattainable, "Im(tau) too small for the requested precision");
}

/// Extra working bits: guard plus the size of 1/|q| that Delta cancels away.
inline Bits working_precision(Bits prec, long double qabs)
{
    long double lost = -std::log2(qabs);
    return prec + 48 + static_cast<Bits>(std::ceil(std::min(lost, 4096.0L)));
}

inline std::vector<mpz_class> divisor_power_sums(int k, std::size_t M)
{
    std::vector<mpz_class> s(M + 1, 0);
    for (std::size_t d = 1; d <= M; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
        for (std::size_t n = d; n <= M; n += d) s[n] += dk;
    }
    return s;
}

/// sum_{n>=1} sigma_k(n) q^n, truncated with a tail bound added to the radius.
inline ApComplex eisenstein_tail_sum(int k, ApComplex const& q, long double qabs, Bits wp)
{
    long double target = std::ldexp(1.0L, static_cast<int>(-(wp + 32)));
    // sigma_k(n) <= zeta(k) n^k <= 1.21 n^k for k >= 3
    std::size_t M = 1;
    long double bound = 0;
    for (;; ++M) {
        long double n1 = static_cast<long double>(M + 1);
        long double rho = std::pow((n1 + 1) / n1, k) * qabs;
        if (rho < 1) {
            bound = 1.21L * std::pow(n1, k) * std::pow(qabs, n1) / (1 - rho);
            if (bound < target) break;
        }
    }
    auto sig = divisor_power_sums(k, M);
    ApComplex sum(wp), qn(1L, wp);
    for (std::size_t n = 1; n <= M; ++n) {
        qn *= q;
        sum += qn * Real(sig[n], wp);
    }
    sum.widen(bound);
    return sum;
}

} // namespace detail

inline ApComplex q_of(ApComplex const& tau, Bits wp)
{
    ApComplex t(Real(tau.re(), wp), Real(tau.im(), wp), tau.err());
    return exp(detail::two_pi_i_times(t));
}

inline ModularValues eval_g2g3_delta_j(ApComplex const& tau, Bits prec = default_precision)
{
    detail::check_upper_half_plane(tau);
    long double qabs = detail::q_abs_bound(tau);
    detail::check_terms(qabs, prec);
    Bits wp = detail::working_precision(prec, qabs);
    ApComplex q = q_of(tau, wp);
    ApComplex e4 = ApComplex(1L, wp) + detail::eisenstein_tail_sum(3, q, qabs, wp) * 240L;
    ApComplex e6 = ApComplex(1L, wp) - detail::eisenstein_tail_sum(5, q, qabs, wp) * 504L;
    Real two_pi = Real::pi(wp) * 2L;
    Real tp2 = two_pi * two_pi;
    Real tp4 = tp2 * tp2;
    Real tp6 = tp4 * tp2;
    ModularValues mv;
    mv.g2 = e4 * (tp4 / 12L);
    mv.g3 = e6 * (tp6 / 216L);
    ApComplex g2c = mv.g2 * mv.g2 * mv.g2;
    mv.delta = g2c - mv.g3 * mv.g3 * 27L;
    if (!mv.delta.certainly_nonzero()) fail(ErrorCode::PrecisionUnattainable, "Delta not separated from zero");
    mv.j = g2c * 1728L / mv.delta;
    return mv;
}

/// Delta via the product (2 pi)^12 q prod (1 - q^n)^24, independent of the
/// Eisenstein route.
inline ApComplex delta_product(ApComplex const& tau, Bits prec = default_precision)
{
    detail::check_upper_half_plane(tau);
    long double qabs = detail::q_abs_bound(tau);
    detail::check_terms(qabs, prec);
    Bits wp = detail::working_precision(prec, qabs);
    ApComplex q = q_of(tau, wp);
    ApComplex prod(1L, wp), qn(1L, wp);
    long double target = std::ldexp(1.0L, static_cast<int>(-(wp + 32)));
    long double qn_abs = 1;
    for (int n = 1;; ++n) {
        qn *= q;
        qn_abs *= qabs;
        prod *= ApComplex(1L, wp) - qn;
        // log tail sum_{m>n} |log(1 - q^m)| <= 2 |q|^{n+1} / (1 - |q|)
        long double tail = 2 * qn_abs * qabs / (1 - qabs);
        if (tail * 24 < target) {
            prod.widen(prod.mod_ld() * std::expm1(24 * tail));
            break;
        }
    }
    ApComplex p24 = pow(prod, 24);
    Real two_pi = Real::pi(wp) * 2L;
    Real tp12 = pow(ApComplex(two_pi, Real(wp)), 12).re();
    return q * p24 * tp12;
}

/// Weierstrass p(z; [tau, 1]) from the u, q double series.
inline ApComplex wp(ApComplex const& z, ApComplex const& tau, Bits prec = default_precision)
{
    detail::check_upper_half_plane(tau);
    long double qabs = detail::q_abs_bound(tau);
    detail::check_terms(qabs, prec);
    Bits wpb = detail::working_precision(prec, qabs);
    ApComplex t(Real(tau.re(), wpb), Real(tau.im(), wpb), tau.err());
    ApComplex w(Real(z.re(), wpb), Real(z.im(), wpb), z.err());
    // reduce z into the period parallelogram centred at 0
    Real x = w.im() / t.im();
    mpz_class n1 = round_to_integer(x);
    if (n1 != 0) w -= t * ApComplex(Real(n1, wpb), Real(wpb));
    mpz_class n2 = round_to_integer(w.re());
    if (n2 != 0) w -= ApComplex(Real(n2, wpb), Real(wpb));
    if (!(w.mod_ld() > w.err() * 4 + std::ldexp(1.0L, static_cast<int>(-(prec / 2)))))
        fail(ErrorCode::PoleAtLatticePoint, "z lies on (or too close to) the lattice [tau, 1]");

    ApComplex q = q_of(t, wpb);
    ApComplex u = exp(detail::two_pi_i_times(w));
    ApComplex uinv = ApComplex(1L, wpb) / u;
    ApComplex one(1L, wpb);
    ApComplex sum = ApComplex(1L, wpb) / ApComplex(12L, wpb) + u / square(one - u);
    long double target = std::ldexp(1.0L, static_cast<int>(-(wpb + 32)));
    long double sq = std::sqrt(qabs);
    ApComplex qn(1L, wpb);
    long double qn_abs = 1;
    for (int n = 1;; ++n) {
        qn *= q;
        qn_abs *= qabs;
        ApComplex a = qn * u, b = qn * uinv;
        sum += a / square(one - a) + b / square(one - b) - qn / square(one - qn) * 2L;
        // remaining terms: each of the three pieces is at most |q|^{m-1/2} / (1 - |q|^{1/2})^2
        long double tail = 4 * qn_abs * sq / ((1 - sq) * (1 - sq) * (1 - qabs));
        if (tail * 40 < target) {
            sum.widen(tail);
            break;
        }
    }
    // (2 pi i)^2 = -4 pi^2
    Real pi = Real::pi(wpb);
    Real factor = -(pi * pi * 4L);
    return sum * factor;
}

/// The point r1 tau + r2.
inline ApComplex torsion_point(FrickeLabel const& v, ApComplex const& tau)
{
    Bits p = tau.prec();
    return tau * ApComplex(Real(v.r1, p), Real(p)) + ApComplex(Real(v.r2, p), Real(p));
}

/// f^(k)_v(tau), evaluated at the normalized label.
inline ApComplex fricke(int k, FrickeLabel const& v, ApComplex const& tau, Bits prec = default_precision)
{
    if (k < 1 || k > 3) fail(ErrorCode::InvalidArgument, "Fricke branch k must be 1, 2 or 3");
    FrickeLabel nv = normalize(v);
    ModularValues mv = eval_g2g3_delta_j(tau, prec);
    ApComplex p = wp(torsion_point(nv, tau), tau, prec);
    switch (k) {
    case 1: return mv.g2 * mv.g3 / mv.delta * p;
    case 2: return mv.g2 * mv.g2 / mv.delta * square(p);
    default: return mv.g3 / mv.delta * p * square(p);
    }
}

/// Fricke branch used by the Weber function of K: 2 for d = -4, 3 for d = -3, else 1.
inline int weber_branch(FieldParams const& f) { return f.disc == -4 ? 2 : (f.disc == -3 ? 3 : 1); }

inline ApComplex tau_K(FieldParams const& f, Bits prec) { return embed(f, f.tau(), prec + 16); }

/// h_E(phi_E(r1 tau_K + r2)) = f^(k)_v(tau_K).
inline ApComplex weber_value(FieldParams const& f, FrickeLabel const& v, Bits prec = default_precision)
{
    return fricke(weber_branch(f), v, tau_K(f, prec), prec);
}

/// Second Bernoulli polynomial.
inline mpq_class bernoulli2(mpq_class const& x) { return x * x - x + mpq_class(1, 6); }

/// Natural log of a complex value kept as (log|z|, arg z) so that huge
/// powers never leave the representable range.
struct LogValue {
    Real log_abs;
    Real arg;  // in (-pi, pi]
    Radius err = 0;

    LogValue scaled(long k) const
    {
        LogValue r{log_abs * k, arg * k, err * std::fabs(static_cast<long double>(k))};
        r.reduce_arg();
        return r;
    }
    void reduce_arg()
    {
        Real two_pi = Real::pi(arg.prec()) * 2L;
        Real t = arg / two_pi + Real(0.5, arg.prec());
        arg -= floor(t) * two_pi;
    }
    ApComplex exp_value() const { return cmray::exp(ApComplex(log_abs, arg, err)); }
};

inline LogValue to_log(ApComplex const& z)
{
    ApComplex l = log(z);
    return {l.re(), l.im(), l.err()};
}

/// Siegel function g_(r1, r2)(tau) for r1 in [0, 1) from the infinite product.
inline ApComplex siegel_product(mpq_class const& r1, mpq_class const& r2, ApComplex const& tau, Bits prec)
{
    if (r1 < 0 || r1 >= 1) fail(ErrorCode::InvalidLabel, "siegel_product needs r1 in [0, 1)");
    if (r1 == 0 && r2.get_den() == 1) fail(ErrorCode::InvalidLabel, "label lies in Z^2");
    detail::check_upper_half_plane(tau);
    long double qabs = detail::q_abs_bound(tau);
    detail::check_terms(qabs, prec);
    Bits wp = detail::working_precision(prec, qabs);
    ApComplex t(Real(tau.re(), wp), Real(tau.im(), wp), tau.err());
    ApComplex q = q_of(t, wp);
    ApComplex z = t * ApComplex(Real(r1, wp), Real(wp)) + ApComplex(Real(r2, wp), Real(wp));
    ApComplex u = exp(detail::two_pi_i_times(z));
    ApComplex uinv = ApComplex(1L, wp) / u;
    ApComplex one(1L, wp);
    // -e^{pi i r2 (r1 - 1)} q^{B2(r1)/2}
    mpq_class half_b2 = bernoulli2(r1) / 2;
    ApComplex lead = exp(detail::two_pi_i_times(t * ApComplex(Real(half_b2, wp), Real(wp))));
    lead *= ApComplex::unit_root(r2 * (r1 - 1) / 2, wp);
    lead = -lead;
    ApComplex prod = one - u;
    long double target = std::ldexp(1.0L, static_cast<int>(-(wp + 32)));
    long double r1d = r1.get_d();
    long double qn_abs = 1;
    ApComplex qn(1L, wp);
    for (int n = 1;; ++n) {
        qn *= q;
        qn_abs *= qabs;
        prod *= (one - qn * u) * (one - qn * uinv);
        // log tail: sum_{m>n} 2(|q|^{m+r1} + |q|^{m-r1})
        long double nxt = qn_abs * qabs;
        long double tail = 2 * (nxt * std::pow(qabs, r1d) + nxt * std::pow(qabs, -r1d)) / (1 - qabs);
        if (tail < target && nxt * std::pow(qabs, -r1d) < 0.5L) {
            prod.widen(prod.mod_ld() * std::expm1(tail));
            break;
        }
    }
    return lead * prod;
}

/// g_v(tau) for an arbitrary representative v, using the exact
/// quasi-periodicity g_{a+b} = (-1)^{b1 b2 + b1 + b2} e^{-pi i (b1 a2 - b2 a1)} g_a.
inline ApComplex siegel_any(FrickeLabel const& v, ApComplex const& tau, Bits prec = default_precision)
{
    mpz_class b1 = detail::floor_q(v.r1), b2 = detail::floor_q(v.r2);
    mpq_class a1 = v.r1 - b1, a2 = v.r2 - b2;
    ApComplex g = siegel_product(a1, a2, tau, prec);
    mpz_class sgn = b1 * b2 + b1 + b2;
    mpq_class phase = -(mpq_class(b1) * a2 - mpq_class(b2) * a1) / 2;
    if (mpz_odd_p(sgn.get_mpz_t())) phase += mpq_class(1, 2);
    if (phase != 0) g *= ApComplex::unit_root(phase, g.prec());
    return g;
}

/// g_v(tau) at the normalized label (its 12N-th power is a label invariant).
inline ApComplex siegel(FrickeLabel const& v, ApComplex const& tau, Bits prec = default_precision)
{
    FrickeLabel nv = normalize(v);
    return siegel_product(nv.r1, nv.r2, tau, prec);
}

/// log(g_v(tau)^{12N}) with N the primitive denominator of v.
inline LogValue siegel_pow_log(FrickeLabel const& v, ApComplex const& tau, Bits prec = default_precision)
{
    return to_log(siegel(v, tau, prec)).scaled(12 * v.N);
}

/// Relative residual of (f_u - f_v)^6 = j^2 (j - 1728)^3 / (2^30 3^24) *
/// g_{u+v}^6 g_{u-v}^6 / (g_u^12 g_v^12), both sides computed independently.
inline long double verify_fricke_siegel_identity(FrickeLabel const& u, FrickeLabel const& v, ApComplex const& tau,
                                                 Bits prec = default_precision)
{
    if (labels_equivalent(u, v)) fail(ErrorCode::LabelsEquivalent, "u = +-v mod Z^2: " + u.str() + ", " + v.str());
    ApComplex lhs = pow(fricke(1, u, tau, prec) - fricke(1, v, tau, prec), 6);
    ModularValues mv = eval_g2g3_delta_j(tau, prec);
    Bits wp = mv.j.prec();
    ApComplex jj = square(mv.j) * pow(mv.j - ApComplex(1728L, wp), 3);
    mpz_class c30, c24;
    mpz_ui_pow_ui(c30.get_mpz_t(), 2, 30);
    mpz_ui_pow_ui(c24.get_mpz_t(), 3, 24);
    Real denom(mpz_class(c30 * c24), wp);
    jj = jj / ApComplex(denom, Real(wp));
    FrickeLabel sum = make_label(u.r1 + v.r1, u.r2 + v.r2);
    FrickeLabel diff = make_label(u.r1 - v.r1, u.r2 - v.r2);
    ApComplex num = pow(siegel_any(sum, tau, prec) * siegel_any(diff, tau, prec), 6);
    ApComplex den = pow(siegel_any(u, tau, prec) * siegel_any(v, tau, prec), 12);
    ApComplex rhs = jj * num / den;
    return relative_residual(lhs, rhs);
}

} // namespace cmray
