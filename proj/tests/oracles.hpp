#pragma once

// Independent reference computations used by the tests. Nothing here goes
// through the ray class group machinery or the q-series code.

#include "cmray/qfield.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using cmray::AlgNum;
using cmray::FieldParams;
using cmray::i64;
using cmray::IdealHNF;

/// Kronecker symbol (a/n) for n > 0 by quadratic reciprocity.
inline int kronecker(i64 a, i64 n)
{
    if (n == 0) return std::llabs(a) == 1 ? 1 : 0;
    int res = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        i64 r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) res = -res;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) res = -res;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

/// h(d) = -(w / 2|d|) sum_{a=1}^{|d|} (d/a) a.
inline i64 analytic_class_number(i64 d)
{
    i64 w = d == -3 ? 6 : (d == -4 ? 4 : 2);
    i64 s = 0;
    for (i64 a = 1; a < -d; ++a) s += kronecker(d, a) * a;
    return -w * s / (2 * -d);
}

/// h(O) for the order of conductor n: h_K n / [O_K^x : O^x] prod_{p | n} (1 - (d/p)/p).
inline i64 order_class_number_formula(i64 d, i64 n)
{
    i64 w = d == -3 ? 6 : (d == -4 ? 4 : 2);
    i64 num = analytic_class_number(d) * n, den = n > 1 ? w / 2 : 1;
    i64 m = n;
    for (i64 p = 2; p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        num = num / p * (p - kronecker(d, p));
    }
    return num / den;
}

/// All x + y tau with N(x + y tau) = n lying in the lattice of `ideal`.
inline std::vector<AlgNum> elements_of_norm_in(FieldParams const& f, IdealHNF const& ideal, i64 n)
{
    std::vector<AlgNum> out;
    // N = (x + y d/2)^2 + y^2 |d| / 4
    i64 ymax = static_cast<i64>(std::sqrt(4.0 * n / -f.disc)) + 1;
    for (i64 y = -ymax; y <= ymax; ++y) {
        double c = -(double)y * f.disc / 2.0;
        double r = std::sqrt(std::max(0.0, (double)n + (double)y * y * f.disc / 4.0));
        for (i64 x = static_cast<i64>(std::floor(c - r)) - 1; x <= static_cast<i64>(std::ceil(c + r)) + 1; ++x) {
            // N(x + y tau) = x^2 + d x y + (d^2 - d)/4 y^2
            i64 nn = x * x + f.disc * x * y + (f.disc * f.disc - f.disc) / 4 * y * y;
            if (nn != n) continue;
            AlgNum a(x, y);
            if (cmray::ideal_contains(ideal, a)) out.push_back(a);
        }
    }
    return out;
}

/// a ~ b in the ray class group mod m iff a conj(b) = (beta) with
/// beta == N(b) mod m for some generator beta.
inline bool ray_equivalent(FieldParams const& f, IdealHNF const& m, IdealHNF const& a, IdealHNF const& b)
{
    IdealHNF ab = cmray::ideal_mul(f, a, cmray::ideal_conj(f, b));
    mpq_class nq = a.norm() * b.norm();
    i64 n = nq.get_num().get_si();
    i64 nb = b.norm().get_num().get_si();
    for (AlgNum const& beta : elements_of_norm_in(f, ab, n)) {
        if (!(cmray::principal_ideal(f, beta) == ab)) continue;
        if (cmray::ideal_contains(m, beta - AlgNum(nb))) return true;
    }
    return false;
}

/// Integral ideals prime to m with norm <= bound, via HNF enumeration.
inline std::vector<IdealHNF> ideals_prime_to(FieldParams const& f, IdealHNF const& m, i64 bound)
{
    std::vector<IdealHNF> out;
    for (i64 n = 1; n <= bound; ++n) {
        for (i64 c = 1; c * c <= n; ++c) {
            if (n % (c * c)) continue;
            i64 a = n / c;
            for (i64 b = 0; b < a; b += c) {
                if (!cmray::is_ok_module(f, a, b, c)) continue;
                IdealHNF x{1, a, b, c};
                if (cmray::ideal_sum(f, x, m).is_unit()) out.push_back(x);
            }
        }
    }
    return out;
}

struct BruteRayClassGroup {
    std::vector<IdealHNF> reps;
    std::vector<int> class_of;  // per ideal in `ideals`
    std::vector<IdealHNF> ideals;
};

inline BruteRayClassGroup brute_ray_classes(FieldParams const& f, IdealHNF const& m, i64 bound)
{
    BruteRayClassGroup g;
    g.ideals = ideals_prime_to(f, m, bound);
    for (auto const& a : g.ideals) {
        int found = -1;
        for (std::size_t r = 0; r < g.reps.size(); ++r) {
            if (ray_equivalent(f, m, a, g.reps[r])) {
                found = static_cast<int>(r);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(g.reps.size());
            g.reps.push_back(a);
        }
        g.class_of.push_back(found);
    }
    return g;
}

/// Cayley table of the brute force classes: reps[i] reps[j] ~ reps[table[i][j]].
inline std::vector<std::vector<int>> brute_cayley_table(FieldParams const& f, IdealHNF const& m, BruteRayClassGroup const& g)
{
    std::size_t n = g.reps.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            IdealHNF p = cmray::ideal_mul(f, g.reps[i], g.reps[j]);
            for (std::size_t r = 0; r < n; ++r) {
                if (ray_equivalent(f, m, p, g.reps[r])) {
                    t[i][j] = t[j][i] = static_cast<int>(r);
                    break;
                }
            }
        }
    }
    return t;
}

/// Element orders from a Cayley table whose identity is class 0.
inline std::map<int, int> table_order_histogram(std::vector<std::vector<int>> const& t)
{
    std::map<int, int> h;
    for (std::size_t x = 0; x < t.size(); ++x) {
        int k = 1, p = static_cast<int>(x);
        while (p != 0 && k <= static_cast<int>(t.size())) {
            p = t[p][x];
            ++k;
        }
        ++h[p == 0 ? k : -1];
    }
    return h;
}

/// Multiset of element orders of Z/n1 x ... x Z/nk.
inline std::map<int, int> element_order_histogram(std::vector<int> const& factors)
{
    std::map<int, int> h;
    int total = 1;
    for (int n : factors) total *= n;
    for (int idx = 0; idx < total; ++idx) {
        int rem = idx, ord = 1;
        for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
            int e = rem % factors[k];
            rem /= factors[k];
            ord = std::lcm(ord, factors[k] / std::gcd(factors[k], e));
        }
        ++h[ord];
    }
    return h;
}

} // namespace oracle
