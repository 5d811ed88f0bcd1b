#pragma once

// Exact arithmetic in an imaginary quadratic field K = Q(sqrt(d)) with
// O_K = [tau, 1], tau = (d + sqrt(d)) / 2, and in its fractional ideals.

#include "cmray/apcomplex.hpp"
#include "cmray/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cmray {

using i64 = std::int64_t;
using i128 = __int128;

namespace detail {

inline i64 narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::Overflow, "ideal arithmetic exceeded 64 bits");
    return static_cast<i64>(v);
}

inline i64 mul(i64 a, i64 b) { return narrow(static_cast<i128>(a) * b); }

/// n/d in lowest terms (the two-argument mpq_class constructor does not reduce).
inline mpq_class rat(long n, long d)
{
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

inline i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 floor_div(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::array<i64, 3> xgcd(i64 a, i64 b)
{
    i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        i64 q = floor_div(a, b);
        i64 r = a - q * b;
        a = b;
        b = r;
        i64 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        i64 t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (a < 0) return {-a, -s0, -t0};
    return {a, s0, t0};
}

inline i64 isqrt(i64 n)
{
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline i64 powmod(i64 b, i64 e, i64 m)
{
    i128 r = 1, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

inline i64 to_i64(mpz_class const& z)
{
    if (!z.fits_slong_p()) fail(ErrorCode::Overflow, "integer does not fit in 64 bits");
    return z.get_si();
}

} // namespace detail

inline bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<i64>(static_cast<i128>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Kronecker symbol (d | p) for a prime p.
inline int kronecker_symbol(i64 d, i64 p)
{
    if (p == 2) {
        if (d % 2 == 0) return 0;
        i64 r = detail::mod(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    i64 r = detail::mod(d, p);
    if (r == 0) return 0;
    return detail::powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Prime factorisation of n > 0 by trial division.
inline std::vector<std::pair<i64, int>> factor_integer(i64 n)
{
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// a + b*tau with rational coordinates.
struct AlgNum {
    mpq_class a;
    mpq_class b;

    AlgNum() = default;
    AlgNum(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}
    AlgNum(long a_) : a(a_), b(0) {}

    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    bool is_zero() const { return a == 0 && b == 0; }

    friend bool operator==(AlgNum const& x, AlgNum const& y) { return x.a == y.a && x.b == y.b; }
    friend AlgNum operator+(AlgNum const& x, AlgNum const& y) { return {x.a + y.a, x.b + y.b}; }
    friend AlgNum operator-(AlgNum const& x, AlgNum const& y) { return {x.a - y.a, x.b - y.b}; }
    friend AlgNum operator-(AlgNum const& x) { return {-x.a, -x.b}; }
    friend AlgNum operator*(mpq_class const& k, AlgNum const& x) { return {k * x.a, k * x.b}; }

    std::string str() const
    {
        std::string s = a.get_str();
        if (b == 0) return s;
        return s + (b < 0 ? " - " : " + ") + mpq_class(abs(b)).get_str() + "*tau";
    }
};

struct FieldParams {
    i64 disc = 0;
    /// x^2 + tau_min_poly.first * x + tau_min_poly.second is the minimal polynomial of tau.
    std::pair<i64, i64> tau_min_poly;
    int unit_count = 2;

    i64 tau_trace() const { return disc; }
    i64 tau_norm() const { return tau_min_poly.second; }

    AlgNum tau() const { return {0, 1}; }

    AlgNum mul(AlgNum const& x, AlgNum const& y) const
    {
        // tau^2 = d*tau - tau_norm
        mpq_class bb = x.b * y.b;
        return {x.a * y.a - bb * tau_norm(), x.a * y.b + x.b * y.a + bb * disc};
    }
    AlgNum conj(AlgNum const& x) const { return {x.a + x.b * disc, -x.b}; }
    mpq_class norm(AlgNum const& x) const { return x.a * x.a + x.a * x.b * disc + x.b * x.b * tau_norm(); }
    mpq_class trace(AlgNum const& x) const { return 2 * x.a + x.b * disc; }
    AlgNum inv(AlgNum const& x) const
    {
        mpq_class n = norm(x);
        if (n == 0) fail(ErrorCode::InvalidArgument, "inverse of zero");
        AlgNum c = conj(x);
        return {c.a / n, c.b / n};
    }
    AlgNum div(AlgNum const& x, AlgNum const& y) const { return mul(x, inv(y)); }

    /// Imaginary part of the embedding divided by sqrt|d|/2 (an exact rational).
    mpq_class im_over_root(AlgNum const& x) const { return x.b; }
    /// Real part of the embedding.
    mpq_class re(AlgNum const& x) const { return x.a + x.b * detail::rat(disc, 2); }

    /// The units of O_K as elements a + b*tau.
    std::vector<AlgNum> units() const
    {
        std::vector<AlgNum> u;
        // enumerate elements of norm 1: |b| <= 2/sqrt|d|
        for (long b = -2; b <= 2; ++b) {
            for (long a = -3; a <= 3; ++a) {
                AlgNum x(a, b);
                if (norm(x) == 1) u.push_back(x);
            }
        }
        return u;
    }
};

inline bool is_fundamental_discriminant(i64 d)
{
    auto squarefree = [](i64 n) {
        n = n < 0 ? -n : n;
        for (i64 p = 2; p * p <= n; ++p) {
            if (n % (p * p) == 0) return false;
        }
        return true;
    };
    i64 r = detail::mod(d, 4);
    if (r == 1) return squarefree(d);
    if (r == 0) {
        i64 m = d / 4;
        i64 mr = detail::mod(m, 4);
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

inline FieldParams make_field(i64 disc)
{
    if (disc >= 0) fail(ErrorCode::NotImaginary, "discriminant " + std::to_string(disc) + " is not negative");
    i64 r = detail::mod(disc, 4);
    if (r != 0 && r != 1) fail(ErrorCode::NotADiscriminant, std::to_string(disc) + " is not a fundamental discriminant (not 0 or 1 mod 4)");
    if (!is_fundamental_discriminant(disc)) fail(ErrorCode::NotFundamental, std::to_string(disc) + " is not a fundamental discriminant");
    FieldParams f;
    f.disc = disc;
    f.tau_min_poly = {-disc, (disc * disc - disc) / 4};
    f.unit_count = disc == -4 ? 4 : (disc == -3 ? 6 : 2);
    return f;
}

/// A fractional ideal (1/den) * [a, b + c*tau] with c | a, c | b, 0 <= b < a,
/// den the least positive integer making the ideal integral. This normal
/// form is unique, so equality of ideals is equality of fields.
struct IdealHNF {
    i64 den = 1;
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;

    mpq_class scale() const { return mpq_class(1, den); }
    mpq_class norm() const { return mpq_class(mpz_class(a) * c, mpz_class(den) * den); }
    bool is_integral() const { return den == 1; }
    bool is_unit() const { return den == 1 && a == 1 && c == 1; }
    /// Smallest positive rational integer in an integral ideal.
    i64 min_integer() const { return a; }

    auto key() const { return std::tie(den, a, b, c); }
    friend bool operator==(IdealHNF const& x, IdealHNF const& y) { return x.key() == y.key(); }
    friend auto operator<=>(IdealHNF const& x, IdealHNF const& y) { return x.key() <=> y.key(); }

    std::string str() const
    {
        std::string s = "[" + std::to_string(a) + ", " + std::to_string(b) + " + " + std::to_string(c) + "*tau]";
        return den == 1 ? s : "(1/" + std::to_string(den) + ")" + s;
    }
};

struct IdealHash {
    std::size_t operator()(IdealHNF const& x) const noexcept
    {
        std::size_t h = std::hash<i64>{}(x.den);
        for (i64 v : {x.a, x.b, x.c}) h = h * 1000003u ^ std::hash<i64>{}(v);
        return h;
    }
};

namespace detail {

struct IntVec {
    i64 x, y;
};

/// HNF of the Z-lattice spanned by integral vectors x + y*tau, then scaled by 1/scale_den.
inline IdealHNF lattice_hnf(std::vector<IntVec> const& gens, i64 scale_den)
{
    // intermediate combinations can exceed 64 bits before a is known
    mpz_class a = 0, g = 0, vx = 0;
    for (IntVec w : gens) {
        mpz_class wx(static_cast<long>(w.x)), wy(static_cast<long>(w.y));
        if (wy == 0) {
            a = gcd(a, wx);
            continue;
        }
        if (g == 0) {
            vx = wx;
            g = wy;
            continue;
        }
        mpz_class gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), wy.get_mpz_t());
        mpz_class nx = s * vx + t * wx;
        mpz_class zx = (wy / gg) * vx - (g / gg) * wx;
        a = gcd(a, zx);
        vx = nx;
        g = gg;
        if (a != 0) mpz_fdiv_r(vx.get_mpz_t(), vx.get_mpz_t(), a.get_mpz_t());
    }
    if (g < 0) {
        g = -g;
        vx = -vx;
    }
    a = abs(a);
    if (a == 0 || g == 0) fail(ErrorCode::InvalidArgument, "generators do not span a rank-2 lattice");
    mpz_fdiv_r(vx.get_mpz_t(), vx.get_mpz_t(), a.get_mpz_t());
    IdealHNF h;
    h.a = to_i64(a);
    h.c = to_i64(g);
    h.b = to_i64(vx);
    // the content gcd(a, b, c) of an O_K-lattice equals c
    i64 content = std::gcd(std::gcd(h.a, h.b), h.c);
    i64 red = std::gcd(content, scale_den);
    h.a /= red;
    h.b /= red;
    h.c /= red;
    h.den = scale_den / red;
    return h;
}

} // namespace detail

/// Z-basis of the ideal as elements of K.
inline std::array<AlgNum, 2> ideal_basis(IdealHNF const& x)
{
    mpq_class s = x.scale();
    return {AlgNum(s * x.a, 0), AlgNum(s * x.b, s * x.c)};
}

/// The O_K-module generated by the given elements of K.
inline IdealHNF ideal_from_generators(FieldParams const& f, std::vector<AlgNum> const& gens)
{
    mpz_class den = 1;
    for (auto const& g : gens) {
        den = lcm(den, g.a.get_den());
        den = lcm(den, g.b.get_den());
    }
    std::vector<detail::IntVec> vecs;
    for (auto const& g : gens) {
        for (AlgNum const& e : {g, f.mul(g, f.tau())}) {
            mpq_class xa = e.a * den, xb = e.b * den;
            vecs.push_back({detail::to_i64(xa.get_num()), detail::to_i64(xb.get_num())});
        }
    }
    return detail::lattice_hnf(vecs, detail::to_i64(den));
}

inline IdealHNF unit_ideal() { return {}; }

inline IdealHNF principal_ideal(FieldParams const& f, AlgNum const& alpha)
{
    if (alpha.is_zero()) fail(ErrorCode::InvalidArgument, "zero does not generate a fractional ideal");
    return ideal_from_generators(f, {alpha});
}

inline IdealHNF rational_ideal(FieldParams const& f, long n) { return principal_ideal(f, AlgNum(n)); }

/// True if the lattice (a, b, c) with den 1 is closed under multiplication by tau.
inline bool is_ok_module(FieldParams const& f, i64 a, i64 b, i64 c)
{
    // tau*a = a*tau must lie in the lattice: a*tau = (a/c)(b + c tau) - (a b / c)
    if (c <= 0 || a % c || b % c) return false;
    // tau*(b + c tau) = b tau + c(d tau - n) = -c n + (b + c d) tau
    i64 y = b + c * f.disc;
    if (y % c) return false;
    i64 k = y / c;
    i64 x = -c * f.tau_norm() - k * b;
    return x % a == 0;
}

inline IdealHNF ideal_mul(FieldParams const& f, IdealHNF const& x, IdealHNF const& y)
{
    auto bx = ideal_basis(x);
    auto by = ideal_basis(y);
    std::vector<AlgNum> gens;
    for (auto const& u : bx) {
        for (auto const& v : by) gens.push_back(f.mul(u, v));
    }
    return ideal_from_generators(f, gens);
}

inline IdealHNF ideal_conj(FieldParams const& f, IdealHNF const& x)
{
    auto bx = ideal_basis(x);
    return ideal_from_generators(f, {f.conj(bx[0]), f.conj(bx[1])});
}

inline IdealHNF ideal_inverse(FieldParams const& f, IdealHNF const& x)
{
    // x * conj(x) = N(x) O_K
    auto bx = ideal_basis(ideal_conj(f, x));
    mpq_class n = x.norm();
    return ideal_from_generators(f, {(1 / n) * bx[0], (1 / n) * bx[1]});
}

inline IdealHNF ideal_pow(FieldParams const& f, IdealHNF const& x, int e)
{
    IdealHNF base = e < 0 ? ideal_inverse(f, x) : x;
    IdealHNF r = unit_ideal();
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r = ideal_mul(f, r, base);
    return r;
}

/// x + y (the gcd of two ideals).
inline IdealHNF ideal_sum(FieldParams const& f, IdealHNF const& x, IdealHNF const& y)
{
    auto bx = ideal_basis(x);
    auto by = ideal_basis(y);
    return ideal_from_generators(f, {bx[0], bx[1], by[0], by[1]});
}

inline bool ideal_contains(IdealHNF const& x, AlgNum const& alpha)
{
    // alpha = u*(s a) + v*(s b + s c tau) with u, v integers
    mpq_class s = x.scale();
    mpq_class v = alpha.b / (s * x.c);
    if (v.get_den() != 1) return false;
    mpq_class u = (alpha.a - v * s * x.b) / (s * x.a);
    return u.get_den() == 1;
}

/// For integral ideals: x | y iff y is contained in x.
inline bool ideal_divides(IdealHNF const& x, IdealHNF const& y)
{
    auto by = ideal_basis(y);
    return ideal_contains(x, by[0]) && ideal_contains(x, by[1]);
}

/// x / y for integral y | x (exact quotient).
inline IdealHNF ideal_div(FieldParams const& f, IdealHNF const& x, IdealHNF const& y)
{
    return ideal_mul(f, x, ideal_inverse(f, y));
}

inline bool ideals_coprime(FieldParams const& f, IdealHNF const& x, IdealHNF const& y)
{
    return ideal_sum(f, x, y).is_unit();
}

/// Integral alpha generates an ideal prime to m.
inline bool element_prime_to(FieldParams const& f, AlgNum const& alpha, IdealHNF const& m)
{
    if (alpha.is_zero()) return false;
    return ideals_coprime(f, principal_ideal(f, alpha), m);
}

enum class Splitting { Split, Inert, Ramified };

struct PrimeFactorization {
    Splitting kind;
    std::vector<std::pair<IdealHNF, int>> primes;
};

namespace detail {

/// Square root of n modulo an odd prime p (n a quadratic residue).
inline i64 sqrt_mod(i64 n, i64 p)
{
    n = mod(n, p);
    if (n == 0) return 0;
    if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s;
    i64 c = powmod(z, q, p);
    i64 t = powmod(n, q, p);
    i64 r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        i64 i = 0, tt = t;
        while (tt != 1) {
            tt = static_cast<i64>(static_cast<i128>(tt) * tt % p);
            ++i;
        }
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = static_cast<i64>(static_cast<i128>(b) * b % p);
        m = i;
        c = static_cast<i64>(static_cast<i128>(b) * b % p);
        t = static_cast<i64>(static_cast<i128>(t) * c % p);
        r = static_cast<i64>(static_cast<i128>(r) * b % p);
    }
    return r;
}

/// Roots of the minimal polynomial of tau modulo p.
inline std::vector<i64> tau_roots_mod(FieldParams const& f, i64 p)
{
    std::vector<i64> roots;
    if (p == 2) {
        for (i64 r = 0; r < 2; ++r) {
            if (mod(r * r + f.tau_min_poly.first * r + f.tau_min_poly.second, 2) == 0) roots.push_back(r);
        }
        return roots;
    }
    // roots are (d +- sqrt(d)) / 2 modulo p
    i64 s = sqrt_mod(f.disc, p);
    i64 inv2 = (p + 1) / 2;
    for (i64 sign : {1, -1}) {
        i64 r = static_cast<i64>(static_cast<i128>(mod(f.disc + sign * s, p)) * inv2 % p);
        if (roots.empty() || roots.back() != r) roots.push_back(r);
    }
    if (roots.size() == 2 && roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    return roots;
}

} // namespace detail

/// The prime ideal [p, tau - r] for a root r of the minimal polynomial mod p.
inline IdealHNF prime_above(i64 p, i64 root)
{
    IdealHNF h;
    h.a = p;
    h.b = detail::mod(-root, p);
    h.c = 1;
    return h;
}

inline PrimeFactorization factor_rational_prime(FieldParams const& f, i64 p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    int k = kronecker_symbol(f.disc, p);
    PrimeFactorization out;
    if (k == -1) {
        out.kind = Splitting::Inert;
        out.primes.push_back({rational_ideal(f, p), 1});
        return out;
    }
    auto roots = detail::tau_roots_mod(f, p);
    if (k == 0) {
        out.kind = Splitting::Ramified;
        out.primes.push_back({prime_above(p, roots.at(0)), 2});
    } else {
        out.kind = Splitting::Split;
        out.primes.push_back({prime_above(p, roots.at(0)), 1});
        out.primes.push_back({prime_above(p, roots.at(1)), 1});
    }
    return out;
}

/// Prime ideal factorisation of an integral ideal, via the factorisation of its norm.
inline std::vector<std::pair<IdealHNF, int>> factor_ideal(FieldParams const& f, IdealHNF const& x)
{
    if (!x.is_integral()) fail(ErrorCode::InvalidArgument, "factor_ideal needs an integral ideal");
    std::vector<std::pair<IdealHNF, int>> out;
    mpq_class nq = x.norm();
    i64 n = detail::to_i64(nq.get_num());
    for (auto [p, e] : factor_integer(n)) {
        for (auto const& [P, unused] : factor_rational_prime(f, p).primes) {
            int v = 0;
            IdealHNF cur = x;
            while (ideal_divides(P, cur)) {
                cur = ideal_div(f, cur, P);
                ++v;
            }
            if (v) out.push_back({P, v});
        }
    }
    return out;
}

/// Elements of the primitive integral ideal [A, B + tau] with norm exactly
/// `target`; returns the first found in the order of increasing |y|.
inline std::optional<AlgNum> find_element_of_norm(FieldParams const& f, i64 A, i64 B, i64 target)
{
    // N(u + y tau) = target with u = xA + yB; solving for u gives
    // u = (-d y +- sqrt(d y^2 + 4 target)) / 2.
    i64 d = f.disc;
    i64 ymax = detail::isqrt(detail::narrow(static_cast<i128>(4) * target / (-d)));
    for (i64 ay = 0; ay <= ymax; ++ay) {
        for (i64 y : {ay, -ay}) {
            if (ay == 0 && y < 0) continue;
            i64 disc = detail::narrow(static_cast<i128>(d) * y * y + static_cast<i128>(4) * target);
            if (disc < 0) continue;
            i64 s = detail::isqrt(disc);
            if (s * s != disc) continue;
            for (i64 sg : {s, -s}) {
                i64 num = -d * y + sg;
                if (num % 2) continue;
                i64 u = num / 2;
                if (detail::mod(u - detail::mul(y, B), A) == 0) return AlgNum(u, y);
            }
        }
    }
    return std::nullopt;
}

/// A generator of x when x is principal. Exact: x is principal iff its
/// lattice holds an element whose norm equals N(x).
inline std::optional<AlgNum> is_principal(FieldParams const& f, IdealHNF const& x)
{
    // den * x = c [a/c, b/c + tau]
    i64 A = x.a / x.c, B = x.b / x.c;
    auto g = find_element_of_norm(f, A, B, A);
    if (!g) return std::nullopt;
    mpq_class k(x.c, x.den);
    return k * *g;
}

/// Z-basis (w1, w2) of x with Im(w1 / w2) > 0.
inline std::pair<AlgNum, AlgNum> zbasis_oriented(FieldParams const& f, IdealHNF const& x)
{
    auto bx = ideal_basis(x);
    AlgNum w1 = bx[1], w2 = bx[0];
    if (f.im_over_root(f.div(w1, w2)) < 0) std::swap(w1, w2);
    return {w1, w2};
}

/// Orientation-preserving Gauss reduction of an oriented basis, so that
/// w1/w2 lands in the standard fundamental domain. Exact in K.
inline std::pair<AlgNum, AlgNum> reduce_basis(FieldParams const& f, AlgNum w1, AlgNum w2)
{
    for (int iter = 0; iter < 10000; ++iter) {
        AlgNum w = f.div(w1, w2);
        mpq_class re = f.re(w);
        mpz_class n;
        {
            mpq_class shifted = re + mpq_class(1, 2);
            mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        }
        if (n != 0) {
            w1 = w1 - mpq_class(n) * w2;
            continue;
        }
        if (f.norm(w) < 1) {
            AlgNum t = -w2;
            w2 = w1;
            w1 = t;
            continue;
        }
        return {w1, w2};
    }
    fail(ErrorCode::InvalidArgument, "basis reduction did not terminate");
}

inline ApComplex embed(FieldParams const& f, AlgNum const& x, Bits prec)
{
    Bits wp = prec + 16;
    Real root = sqrt(Real(-f.disc, wp));
    Real re(f.re(x), wp);
    Real im = Real(x.b, wp) * root / 2L;
    ApComplex z(Real(re, prec), Real(im, prec));
    z.widen(detail::rounding_radius(z.mod_ld() + 1, prec));
    return z;
}

/// The different of K/Q: sqrt(d) O_K, generated by 2 tau - d.
inline IdealHNF different_ideal(FieldParams const& f) { return principal_ideal(f, AlgNum(-f.disc, 2)); }

/// Canonical residue of u + v*tau modulo an integral ideal m: the unique
/// (x, y) with 0 <= x < m.a, 0 <= y < m.c congruent to it.
inline std::pair<i64, i64> reduce_mod(IdealHNF const& m, i64 u, i64 v)
{
    i64 y = detail::mod(v, m.c);
    i64 q = (v - y) / m.c;
    i64 x = detail::mod(u - detail::mul(q, m.b), m.a);
    return {x, y};
}

/// All integral ideals of the given norm, in increasing (a, b, c) order.
inline std::vector<IdealHNF> ideals_of_norm(FieldParams const& f, i64 n)
{
    std::vector<IdealHNF> out;
    for (i64 c = 1; c * c <= n; ++c) {
        if (n % (c * c)) continue;
        i64 a = n / c;
        for (i64 b = 0; b < a; b += c) {
            if (is_ok_module(f, a, b, c)) out.push_back({1, a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cmray
