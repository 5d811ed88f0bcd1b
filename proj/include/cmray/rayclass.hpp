#pragma once

// Ray class groups Cl(m) = I_K(m) / P_{K,1}(m) for an integral modulus m of
// an imaginary quadratic field, built explicitly from the exact sequence
//
//   1 -> (O_K/m)^x / image(O_K^x) -> Cl(m) -> Cl(O_K) -> 1,
//
// together with their character groups, conductors, and the subgroups cut
// out by the ring class field and the Hilbert class field.

#include "cmray/abelian.hpp"
#include "cmray/apcomplex.hpp"
#include "cmray/forms.hpp"
#include "cmray/qfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cmray {

struct Modulus {
    FieldParams field;
    IdealHNF ideal;
    /// Least positive rational integer in the ideal.
    i64 N = 1;

    /// True when ideal = N * O_K.
    bool is_rational() const { return ideal == IdealHNF{1, N, 0, N}; }
};

inline Modulus make_modulus(FieldParams const& f, IdealHNF const& ideal)
{
    if (!ideal.is_integral()) fail(ErrorCode::InvalidArgument, "modulus must be an integral ideal");
    if (ideal.is_unit()) fail(ErrorCode::ModulusTrivial, "modulus must be nontrivial");
    return {f, ideal, ideal.min_integer()};
}

inline Modulus make_modulus(FieldParams const& f, i64 N)
{
    if (N <= 1) fail(ErrorCode::ModulusTrivial, "modulus must be nontrivial (N > 1)");
    return make_modulus(f, rational_ideal(f, N));
}

/// A ray class, identified by its exponent vector over the invariant factors.
struct RayClass {
    std::vector<int> exps;
    friend bool operator==(RayClass const&, RayClass const&) = default;
};

class RayClassGroup {
  public:
    explicit RayClassGroup(Modulus m);

    Modulus const& modulus() const { return mod_; }
    FieldParams const& field() const { return mod_.field; }
    int order() const { return group_.order(); }
    std::vector<int> const& structure() const { return group_.invariant_factors(); }
    i64 class_number() const { return static_cast<i64>(cl_reps_.size()); }

    /// Class index in [0, order): mixed radix value of the exponent vector.
    int index(RayClass const& c) const { return group_.flat(c.exps); }
    RayClass at(int index) const { return {group_.unflat(index)}; }
    RayClass identity() const { return at(0); }

    RayClass mul(RayClass const& x, RayClass const& y) const
    {
        RayClass r = x;
        for (std::size_t k = 0; k < r.exps.size(); ++k) r.exps[k] = static_cast<int>((r.exps[k] + y.exps[k]) % structure()[k]);
        return r;
    }
    RayClass inv(RayClass const& x) const
    {
        RayClass r = x;
        for (std::size_t k = 0; k < r.exps.size(); ++k) r.exps[k] = static_cast<int>((structure()[k] - r.exps[k]) % structure()[k]);
        return r;
    }
    RayClass pow(RayClass const& x, long e) const
    {
        RayClass r = x;
        for (std::size_t k = 0; k < r.exps.size(); ++k) r.exps[k] = static_cast<int>(detail::mod(static_cast<i64>(x.exps[k]) * e, structure()[k]));
        return r;
    }

    /// Minimal-norm integral representative (ties broken by HNF key), prime to m.
    IdealHNF const& rep(RayClass const& c) const { return reps_.at(index(c)); }
    std::vector<IdealHNF> const& reps() const { return reps_; }

    bool prime_to_modulus(IdealHNF const& x) const;
    RayClass class_of(IdealHNF const& x) const;
    /// Class of the principal ideal (alpha), alpha integral and prime to m.
    RayClass class_of_element(AlgNum const& alpha) const;

    /// The prime ideals dividing the modulus.
    std::vector<IdealHNF> const& modulus_primes() const { return primes_; }
    /// All integral divisors of the modulus, sorted by norm then HNF key.
    std::vector<IdealHNF> const& modulus_divisors() const { return divisors_; }
    /// Class indices of (alpha) with alpha == 1 mod divisor_d, alpha prime to m.
    std::vector<int> const& divisor_kernel(std::size_t d) const { return kernels_.at(d); }

    /// Residues x + y tau of (O_K/m)^x as integral elements.
    std::vector<AlgNum> unit_residues() const;

  private:
    struct Raw {
        int cl;   // index into cl_reps_
        int orb;  // orbit of the residue under the unit group
    };

    int code(i64 x, i64 y) const { return static_cast<int>(y * mod_.ideal.a + x); }
    int code_of(AlgNum const& alpha) const;
    int residue_mul(int u, int v) const;
    int raw_index(Raw r) const { return r.cl * static_cast<int>(orbit_rep_.size()) + r.orb; }
    Raw raw_of_integral(IdealHNF const& x) const;
    RayClass from_raw(Raw r) const { return {group_.log(raw_index(r))}; }

    Modulus mod_;
    std::vector<IdealHNF> primes_;
    std::vector<IdealHNF> divisors_;
    std::vector<std::vector<int>> kernels_;

    // residue ring bookkeeping
    std::vector<int> orbit_of_code_;  // -1 for non-units
    std::vector<int> orbit_rep_;      // representative code per orbit
    std::vector<AlgNum> units_;

    // class group of O_K: representatives with norm prime to m
    std::vector<IdealHNF> cl_reps_;
    std::vector<IdealHNF> cl_reps_conj_;
    std::vector<i64> cl_rep_norm_inv_;  // N(b_i)^{-1} mod N
    std::vector<std::vector<Raw>> cocycle_;  // b_i b_j = (rho) b_k

    FiniteAbelianGroup group_;
    std::vector<IdealHNF> reps_;
};

inline int RayClassGroup::code_of(AlgNum const& alpha) const
{
    auto [x, y] = reduce_mod(mod_.ideal, detail::to_i64(alpha.a.get_num()), detail::to_i64(alpha.b.get_num()));
    return code(x, y);
}

inline int RayClassGroup::residue_mul(int u, int v) const
{
    i64 a = mod_.ideal.a;
    i64 x1 = u % a, y1 = u / a, x2 = v % a, y2 = v / a;
    FieldParams const& f = mod_.field;
    // (x1 + y1 t)(x2 + y2 t) with t^2 = d t - n, coordinates reduced mod N first
    i64 M = mod_.N;
    i64 yy = detail::mul(y1, y2) % M;
    i64 px = detail::narrow(static_cast<i128>(x1) * x2 - static_cast<i128>(yy) * (f.tau_norm() % M));
    i64 py = detail::narrow(static_cast<i128>(x1) * y2 + static_cast<i128>(x2) * y1 + static_cast<i128>(yy) * (f.disc % M));
    auto [rx, ry] = reduce_mod(mod_.ideal, detail::mod(px, M), detail::mod(py, M));
    return code(rx, ry);
}

inline bool RayClassGroup::prime_to_modulus(IdealHNF const& x) const
{
    if (x.is_integral()) {
        return std::none_of(primes_.begin(), primes_.end(), [&](IdealHNF const& P) { return ideal_divides(P, x); });
    }
    // split x into numerator and denominator ideals
    IdealHNF denom = ideal_inverse(mod_.field, ideal_sum(mod_.field, x, unit_ideal()));
    IdealHNF num = ideal_mul(mod_.field, x, denom);
    return prime_to_modulus(num) && prime_to_modulus(denom);
}

inline RayClassGroup::Raw RayClassGroup::raw_of_integral(IdealHNF const& x) const
{
    FieldParams const& f = mod_.field;
    for (std::size_t i = 0; i < cl_reps_.size(); ++i) {
        IdealHNF y = ideal_mul(f, x, cl_reps_conj_[i]);
        auto beta = is_principal(f, y);
        if (!beta) continue;
        // x = (beta / N(b_i)) b_i
        auto [ix, iy] = reduce_mod(mod_.ideal, cl_rep_norm_inv_[i], 0);
        int r = residue_mul(code_of(*beta), code(ix, iy));
        int orb = orbit_of_code_.at(r);
        if (orb < 0) fail(ErrorCode::NotPrimeToModulus, "ideal " + x.str() + " is not prime to the modulus");
        return {static_cast<int>(i), orb};
    }
    fail(ErrorCode::InvalidArgument, "ideal class not found among class group representatives");
}

inline RayClass RayClassGroup::class_of(IdealHNF const& x) const
{
    FieldParams const& f = mod_.field;
    if (!prime_to_modulus(x)) fail(ErrorCode::NotPrimeToModulus, "ideal " + x.str() + " is not prime to the modulus");
    if (x.is_integral()) return from_raw(raw_of_integral(x));
    // x = I1 / I2 with I2 = (x + O_K)^{-1} the denominator ideal
    IdealHNF denom = ideal_inverse(f, ideal_sum(f, x, unit_ideal()));
    IdealHNF num = ideal_mul(f, x, denom);
    return mul(from_raw(raw_of_integral(num)), inv(from_raw(raw_of_integral(denom))));
}

inline RayClass RayClassGroup::class_of_element(AlgNum const& alpha) const
{
    if (!alpha.is_integral()) fail(ErrorCode::InvalidArgument, "class_of_element needs an integral element");
    int orb = orbit_of_code_.at(code_of(alpha));
    if (orb < 0) fail(ErrorCode::NotPrimeToModulus, "element " + alpha.str() + " is not prime to the modulus");
    return from_raw({0, orb});
}

inline std::vector<AlgNum> RayClassGroup::unit_residues() const
{
    std::vector<AlgNum> out;
    i64 a = mod_.ideal.a;
    for (std::size_t c = 0; c < orbit_of_code_.size(); ++c) {
        if (orbit_of_code_[c] < 0) continue;
        out.emplace_back(static_cast<long>(static_cast<i64>(c) % a), static_cast<long>(static_cast<i64>(c) / a));
    }
    return out;
}

inline RayClassGroup::RayClassGroup(Modulus m) : mod_(std::move(m))
{
    FieldParams const& f = mod_.field;
    IdealHNF const& mi = mod_.ideal;
    if (!mi.is_integral()) fail(ErrorCode::InvalidArgument, "modulus must be integral");
    if (mi.is_unit()) fail(ErrorCode::ModulusTrivial, "modulus must be nontrivial");
    mod_.N = mi.min_integer();

    auto fac = factor_ideal(f, mi);
    for (auto const& [P, e] : fac) primes_.push_back(P);
    // divisors of m
    divisors_.push_back(unit_ideal());
    for (auto const& [P, e] : fac) {
        std::vector<IdealHNF> next;
        for (auto const& d : divisors_) {
            IdealHNF cur = d;
            for (int k = 0; k <= e; ++k) {
                next.push_back(cur);
                cur = ideal_mul(f, cur, P);
            }
        }
        divisors_ = std::move(next);
    }
    std::sort(divisors_.begin(), divisors_.end(), [](IdealHNF const& x, IdealHNF const& y) {
        if (x.norm() != y.norm()) return x.norm() < y.norm();
        return x < y;
    });

    // residue ring (O_K/m)^x modulo units
    i64 size = detail::mul(mi.a, mi.c);
    if (size > 50'000'000) fail(ErrorCode::InvalidArgument, "modulus too large");
    units_ = f.units();
    orbit_of_code_.assign(static_cast<std::size_t>(size), -2);
    for (i64 cc = 0; cc < size; ++cc) {
        AlgNum alpha(static_cast<long>(cc % mi.a), static_cast<long>(cc / mi.a));
        bool unit = true;
        for (auto const& P : primes_) {
            if (ideal_contains(P, alpha)) {
                unit = false;
                break;
            }
        }
        if (!unit) orbit_of_code_[cc] = -1;
    }
    std::vector<int> unit_codes;
    for (auto const& u : units_) unit_codes.push_back(code_of(u));
    for (i64 cc = 0; cc < size; ++cc) {
        if (orbit_of_code_[cc] != -2) continue;
        int orb = static_cast<int>(orbit_rep_.size());
        orbit_rep_.push_back(static_cast<int>(cc));
        for (int uc : unit_codes) orbit_of_code_[residue_mul(static_cast<int>(cc), uc)] = orb;
    }

    // class group representatives with norm coprime to N
    i64 h = cmray::class_number(f);
    cl_reps_.push_back(unit_ideal());
    for (i64 n = 2; static_cast<i64>(cl_reps_.size()) < h; ++n) {
        if (std::gcd(n, mod_.N) != 1) continue;
        for (auto const& cand : ideals_of_norm(f, n)) {
            bool fresh = true;
            for (auto const& b : cl_reps_) {
                if (is_principal(f, ideal_mul(f, cand, ideal_conj(f, b)))) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) cl_reps_.push_back(cand);
            if (static_cast<i64>(cl_reps_.size()) == h) break;
        }
        if (n > 100000) fail(ErrorCode::SearchExhausted, "class group representatives not found");
    }
    for (auto const& b : cl_reps_) {
        cl_reps_conj_.push_back(ideal_conj(f, b));
        i64 nb = detail::to_i64(b.norm().get_num());
        auto [g, s, t] = detail::xgcd(detail::mod(nb, mod_.N), mod_.N);
        cl_rep_norm_inv_.push_back(mod_.N == 1 ? 0 : detail::mod(s, mod_.N));
    }

    std::size_t hh = cl_reps_.size();
    cocycle_.assign(hh, std::vector<Raw>(hh));
    for (std::size_t i = 0; i < hh; ++i) {
        for (std::size_t j = 0; j < hh; ++j) cocycle_[i][j] = raw_of_integral(ideal_mul(f, cl_reps_[i], cl_reps_[j]));
    }

    int norb = static_cast<int>(orbit_rep_.size());
    int order = static_cast<int>(hh) * norb;
    auto mul = [&](int p, int q) {
        Raw x{p / norb, p % norb}, y{q / norb, q % norb};
        Raw k = cocycle_[x.cl][y.cl];
        int r = residue_mul(residue_mul(orbit_rep_[x.orb], orbit_rep_[y.orb]), orbit_rep_[k.orb]);
        return raw_index({k.cl, orbit_of_code_[r]});
    };
    auto [one_x, one_y] = reduce_mod(mi, 1, 0);
    int identity = raw_index({0, orbit_of_code_[code(one_x, one_y)]});
    group_ = FiniteAbelianGroup(order, identity, mul);

    // kernels of the divisors: classes of (alpha), alpha == 1 mod d
    for (auto const& d : divisors_) {
        std::vector<char> seen(order, 0);
        std::vector<int> cls;
        for (i64 cc = 0; cc < size; ++cc) {
            if (orbit_of_code_[cc] < 0) continue;
            AlgNum alpha(static_cast<long>(cc % mi.a) - 1, static_cast<long>(cc / mi.a));
            if (!ideal_contains(d, alpha)) continue;
            int idx = group_.flat(group_.log(raw_index({0, orbit_of_code_[cc]})));
            if (!seen[idx]) {
                seen[idx] = 1;
                cls.push_back(idx);
            }
        }
        std::sort(cls.begin(), cls.end());
        kernels_.push_back(std::move(cls));
    }

    // minimal-norm representatives
    reps_.assign(order, IdealHNF{});
    std::vector<char> filled(order, 0);
    int left = order;
    for (i64 n = 1; left > 0; ++n) {
        if (n > 5'000'000) fail(ErrorCode::SearchExhausted, "ray class representatives not found");
        for (auto const& cand : ideals_of_norm(f, n)) {
            if (!prime_to_modulus(cand)) continue;
            int idx = index(class_of(cand));
            if (!filled[idx]) {
                filled[idx] = 1;
                reps_[idx] = cand;
                --left;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// characters

struct RayCharacter {
    std::vector<int> orders;     // invariant factors of the group
    std::vector<int> exponents;  // chi(C) = exp(2 pi i sum e_k v_k / n_k)
    IdealHNF conductor;          // unit ideal = trivial conductor

    bool is_principal() const
    {
        return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
    }
    bool conductor_trivial() const { return conductor.is_unit(); }

    /// chi(C) as an exact phase in [0, 1).
    mpq_class phase(RayClass const& c) const
    {
        mpq_class s = 0;
        for (std::size_t k = 0; k < orders.size(); ++k) s += detail::rat(static_cast<long>(exponents[k]) * c.exps[k], orders[k]);
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        s -= fl;
        return s;
    }
    ApComplex value(RayClass const& c, Bits prec) const { return ApComplex::unit_root(phase(c), prec); }

    /// Multiplicative order of the character.
    long order() const
    {
        long o = 1;
        for (std::size_t k = 0; k < orders.size(); ++k) {
            long ok = orders[k] / std::gcd(orders[k], exponents[k]);
            o = std::lcm(o, ok);
        }
        return o;
    }

    RayCharacter conj() const
    {
        RayCharacter r = *this;
        for (std::size_t k = 0; k < orders.size(); ++k) r.exponents[k] = (orders[k] - exponents[k]) % orders[k];
        return r;
    }
};

/// Smallest divisor f' of the modulus with chi trivial on every (alpha),
/// alpha == 1 mod f'.
inline IdealHNF conductor(RayClassGroup const& g, RayCharacter const& chi)
{
    auto const& divs = g.modulus_divisors();
    for (std::size_t d = 0; d < divs.size(); ++d) {
        bool trivial = true;
        for (int idx : g.divisor_kernel(d)) {
            if (chi.phase(g.at(idx)) != 0) {
                trivial = false;
                break;
            }
        }
        if (trivial) return divs[d];
    }
    return g.modulus().ideal;
}

inline RayCharacter make_character(RayClassGroup const& g, std::vector<int> exps)
{
    RayCharacter chi{g.structure(), std::move(exps), {}};
    chi.conductor = conductor(g, chi);
    return chi;
}

/// All characters, enumerated by exponent vector in lexicographic order.
inline std::vector<RayCharacter> characters(RayClassGroup const& g)
{
    std::vector<RayCharacter> out;
    for (int i = 0; i < g.order(); ++i) out.push_back(make_character(g, g.at(i).exps));
    return out;
}

enum class SubgroupKind { Ring, Hilbert };

struct SubgroupView {
    SubgroupKind kind;
    std::vector<char> member_flags;  // by class index

    bool contains(int index) const { return member_flags.at(index) != 0; }
    int order() const { return static_cast<int>(std::count(member_flags.begin(), member_flags.end(), 1)); }
    std::vector<int> members() const
    {
        std::vector<int> m;
        for (std::size_t i = 0; i < member_flags.size(); ++i) {
            if (member_flags[i]) m.push_back(static_cast<int>(i));
        }
        return m;
    }
};

/// Cl(K_f / K_O) = { [t O_K] : t in (Z/N)^x }.
inline SubgroupView ring_subgroup(RayClassGroup const& g)
{
    if (!g.modulus().is_rational()) fail(ErrorCode::ModulusNotRational, "ring subgroup needs a modulus N*O_K");
    SubgroupView v{SubgroupKind::Ring, std::vector<char>(g.order(), 0)};
    i64 N = g.modulus().N;
    for (i64 t = 1; t < N; ++t) {
        if (std::gcd(t, N) != 1) continue;
        v.member_flags[g.index(g.class_of_element(AlgNum(static_cast<long>(t))))] = 1;
    }
    return v;
}

/// Cl(K_f / H_K): classes of principal ideals prime to f.
inline SubgroupView hilbert_subgroup(RayClassGroup const& g)
{
    SubgroupView v{SubgroupKind::Hilbert, std::vector<char>(g.order(), 0)};
    for (auto const& alpha : g.unit_residues()) v.member_flags[g.index(g.class_of_element(alpha))] = 1;
    return v;
}

/// First character (lexicographic exponent order) that is trivial on the
/// ring subgroup, nontrivial on `target`, and whose conductor is divisible by
/// every prime dividing the modulus.
inline RayCharacter find_character_C1C2C3(RayClassGroup const& g, SubgroupView const& ring, RayClass const& target)
{
    i64 N = g.modulus().N;
    i64 d = g.field().disc;
    if (std::gcd(N, i64{6}) != 1) fail(ErrorCode::NNotCoprimeTo6, "N = " + std::to_string(N) + " is not prime to 6");
    if (d == -3 || d == -4) fail(ErrorCode::ExceptionalField, "K must differ from Q(sqrt(-1)), Q(sqrt(-3))");
    if (ring.contains(g.index(target))) fail(ErrorCode::InvalidArgument, "target class lies in the ring subgroup");
    auto ring_members = ring.members();
    for (int i = 0; i < g.order(); ++i) {
        std::vector<int> exps = g.at(i).exps;
        RayCharacter chi{g.structure(), exps, {}};
        bool c1 = std::all_of(ring_members.begin(), ring_members.end(), [&](int m) { return chi.phase(g.at(m)) == 0; });
        if (!c1 || chi.phase(target) == 0) continue;
        chi.conductor = conductor(g, chi);
        bool c3 = std::all_of(g.modulus_primes().begin(), g.modulus_primes().end(),
                              [&](IdealHNF const& P) { return ideal_divides(P, chi.conductor); });
        if (c3) return chi;
    }
    fail(ErrorCode::NoSuchCharacter, "no character satisfies C1-C3");
}

} // namespace cmray
