#include "cmray/invariants.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cmray;

namespace {

constexpr Bits prec = 256;
long double const tol = std::ldexp(1.0L, -200);

template <class F>
void expect_error(ErrorCode code, F&& fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

long double rel(ApComplex const& a, ApComplex const& b) { return distance(a, b) / std::max(1.0L, b.mod_ld()); }

} // namespace

TEST(Invariant, IdentityClassHasWeberLabel)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}, {-4, 5}, {-3, 7}}) {
        FieldParams f = make_field(d);
        RayClassGroup g(make_modulus(f, N));
        Family fam = fricke_family(f);
        InvariantValue iv = fricke_invariant(g, g.identity(), fam, prec);
        EXPECT_TRUE(labels_equivalent(iv.label, make_label(mpq_class(0), detail::rat(1, N)))) << iv.label.str();
        EXPECT_LT(rel(iv.value, weber_value(f, make_label(mpq_class(0), detail::rat(1, N)), prec)), tol);
    }
}

TEST(Invariant, PrincipalClassesMatchClosedForm)
{
    // for C = [(x + y tau)], f C^-1 = (N / alpha) O_K and h_f(C) = f_[y/N; x/N](tau_K)
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}, {-23, 5}}) {
        FieldParams f = make_field(d);
        RayClassGroup g(make_modulus(f, N));
        Family fam = fricke_family(f);
        ApComplex t = tau_K(f, prec);
        for (i64 x = -2; x <= 3; ++x) {
            for (i64 y = -1; y <= 2; ++y) {
                AlgNum alpha(x, y);
                if (alpha.is_zero() || !g.prime_to_modulus(principal_ideal(f, alpha))) continue;
                InvariantValue iv = fricke_invariant(g, g.class_of_element(alpha), fam, prec);
                ApComplex expect = fricke(fam.k, make_label(detail::rat(y, N), detail::rat(x, N)), t, prec);
                EXPECT_LT(rel(iv.value, expect), tol) << d << " " << N << " " << alpha.str();
            }
        }
    }
}

TEST(Invariant, WellDefinedAcrossRepresentativesAndBases)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}}) {
        FieldParams f = make_field(d);
        RayClassGroup g(make_modulus(f, N));
        for (Family fam : {fricke_family(f), siegel_family()}) {
            for (int i = 0; i < g.order(); i += std::max(1, g.order() / 8)) {
                RayClass C = g.at(i);
                InvariantValue base = fricke_invariant(g, C, fam, prec);
                InvariantValue unreduced = invariant_at_ideal(g, g.rep(C), fam, prec, false);
                EXPECT_LT(rel(unreduced.value, base.value), std::ldexp(1.0L, -180)) << fam.name();
                for (auto const& c : alternate_representatives(g, C, 3)) {
                    EXPECT_EQ(g.class_of(c), C);
                    InvariantValue other = invariant_at_ideal(g, c, fam, prec);
                    EXPECT_LT(rel(other.value, base.value), std::ldexp(1.0L, -180)) << fam.name() << " " << c.str();
                }
            }
        }
    }
}

TEST(Invariant, ComplexConjugationIsConjugateClass)
{
    FieldParams f = make_field(-15);
    RayClassGroup g(make_modulus(f, 7));
    Family fam = fricke_family(f);
    for (int i = 0; i < g.order(); i += 5) {
        IdealHNF c = g.rep(g.at(i));
        InvariantValue a = fricke_invariant(g, g.at(i), fam, prec);
        InvariantValue b = invariant_at_ideal(g, ideal_conj(f, c), fam, prec);
        EXPECT_LT(rel(a.value.conj(), b.value), tol) << c.str();
    }
}

TEST(Invariant, GaloisTranslate)
{
    FieldParams f = make_field(-7);
    RayClassGroup g(make_modulus(f, 5));
    Family fam = fricke_family(f);
    auto orbit = invariant_orbit(g, fam, prec);
    ASSERT_EQ(static_cast<int>(orbit.size()), g.order());
    for (int i = 0; i < g.order(); i += 3) {
        EXPECT_LT(rel(galois_translate(g, g.at(i), g.identity(), fam, prec).value, orbit[i].value), tol);
        for (int j = 0; j < g.order(); j += 7) {
            int k = g.index(g.mul(g.at(i), g.at(j)));
            EXPECT_LT(rel(galois_translate(g, g.at(i), g.at(j), fam, prec).value, orbit[k].value), tol);
            EXPECT_LT(rel(galois_translate(g, g.at(j), g.at(i), fam, prec).value, orbit[k].value), tol);
        }
    }
}

TEST(Invariant, SiegelLogValueMatchesValue)
{
    FieldParams f = make_field(-11);
    RayClassGroup g(make_modulus(f, 5));
    for (int i = 0; i < g.order(); ++i) {
        InvariantValue iv = fricke_invariant(g, g.at(i), siegel_family(), prec);
        // g^{12N} from the log equals the direct power of the Siegel function at the label
        ApComplex direct = pow(siegel(iv.label, iv.omega, prec), 60);
        EXPECT_LT(relative_residual(iv.value, direct), std::ldexp(1.0L, -180));
    }
}

TEST(Invariant, NonRationalModulus)
{
    FieldParams f = make_field(-11);
    IdealHNF P = factor_rational_prime(f, 5).primes.front().first;
    RayClassGroup g(make_modulus(f, P));
    for (int i = 0; i < g.order(); ++i) {
        InvariantValue iv = fricke_invariant(g, g.at(i), fricke_family(f), prec);
        EXPECT_EQ(iv.label.N, 5);
        EXPECT_EQ(mpz_class(5) % mpz_class(iv.label.r1.get_den()), 0);
        EXPECT_EQ(mpz_class(5) % mpz_class(iv.label.r2.get_den()), 0);
        for (auto const& c : alternate_representatives(g, g.at(i), 2)) {
            EXPECT_LT(rel(invariant_at_ideal(g, c, fricke_family(f), prec).value, iv.value), std::ldexp(1.0L, -180));
        }
    }
}

TEST(Invariant, Errors)
{
    FieldParams f = make_field(-7);
    Modulus bad{f, rational_ideal(f, 5), 3};
    expect_error(ErrorCode::DenominatorNotDividingN, [&] { lattice_data(bad, unit_ideal()); });
    RayClassGroup g(make_modulus(f, 5));
    expect_error(ErrorCode::InvalidArgument, [&] { invariant_at_ideal(g, rational_ideal(f, 5), fricke_family(f), prec); });
}

TEST(Xi, PathsAgreeAndNonzero)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}, {-4, 5}, {-3, 5}, {-23, 7}}) {
        XiResult r = xi_N_both(make_field(d), N, prec);
        EXPECT_LT(r.path_distance / std::max(1.0L, r.weber_path.mod_ld()), tol) << d << " " << N;
        EXPECT_TRUE(r.weber_path.certainly_nonzero());
    }
}

TEST(Xi, HypothesisErrors)
{
    FieldParams f = make_field(-7);
    expect_error(ErrorCode::NNotCoprimeTo6, [&] { xi_N(f, 4, prec); });
    expect_error(ErrorCode::NNotCoprimeTo6, [&] { xi_N(f, 9, prec); });
    expect_error(ErrorCode::ModulusTrivial, [&] { xi_N(f, 1, prec); });
    expect_error(ErrorCode::ExceptionalField, [&] { norm_to_ring_class(make_field(-4), 5, prec); });
    expect_error(ErrorCode::ExceptionalField, [&] { xi_power_identity_check(make_field(-3), 5, prec); });
}

TEST(Xi, HalfUnits)
{
    EXPECT_EQ(half_units_mod(5), (std::vector<i64>{1, 2}));
    EXPECT_EQ(half_units_mod(7), (std::vector<i64>{1, 2, 3}));
    EXPECT_EQ(half_units_mod(35), (std::vector<i64>{1, 2, 3, 4, 6, 8, 9, 11, 12, 13, 16, 17}));
}

TEST(Xi, NormProductPaths)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}}) {
        FieldParams f = make_field(d);
        NormProductResult r = norm_to_ring_class_both(f, N, prec);
        EXPECT_LT(r.path_distance / std::max(1.0L, r.weber_path.mod_ld()), tol);
        EXPECT_TRUE(r.invariant_path.certainly_nonzero());
        // same product from a precomputed orbit at E = identity
        RayClassGroup g(make_modulus(f, N));
        auto orbit = invariant_orbit(g, fricke_family(f), prec);
        EXPECT_LT(rel(norm_product_from_orbit(g, orbit, g.identity()), r.invariant_path), tol);
    }
    // N = 5 has exactly two factors: (f(2) - f(1)) (f(4) - f(2))
    FieldParams f = make_field(-7);
    auto w = [&](long t) { return weber_value(f, make_label(mpq_class(0), mpq_class(t, 5)), prec); };
    ApComplex two = (w(2) - w(1)) * (w(4) - w(2));
    EXPECT_LT(rel(norm_to_ring_class(f, 5, prec), two), tol);
}

TEST(Xi, TwelveNthPowerIdentity)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}}) {
        EXPECT_LT(xi_power_identity_check(make_field(d), N, prec), std::ldexp(1.0L, -180)) << d << " " << N;
    }
}
