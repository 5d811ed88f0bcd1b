#include "cmray/fieldgen.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cmray;

namespace {

constexpr Bits prec = 256;

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

std::vector<ApComplex> j_at_forms(i64 D, Bits p)
{
    std::vector<ApComplex> out;
    Bits wp = p + 32;
    for (auto const& q : reduced_forms(D)) {
        Real re(detail::rat(-q.b, 2 * q.a), wp);
        Real im = sqrt(Real(-D, wp)) / Real(2 * q.a, wp);
        out.push_back(eval_g2g3_delta_j(ApComplex(re, im, detail::rounding_radius(1, wp)), p).j);
    }
    return out;
}

void expect_integer_poly(OrbitPolynomial const& op, std::vector<mpz_class> const& expect)
{
    ASSERT_TRUE(op.all_recognized);
    ASSERT_EQ(op.recognized.size(), expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) {
        EXPECT_EQ(op.recognized[k].b, 0) << k;
        EXPECT_EQ(op.recognized[k].a, mpq_class(expect[k])) << k;
    }
}

} // namespace

TEST(Recognize, ExactElements)
{
    FieldParams f = make_field(-7);
    for (auto [a, b] : std::vector<std::pair<mpq_class, mpq_class>>{
             {3, 0}, {detail::rat(7, 3), detail::rat(-2, 5)}, {0, 1}, {detail::rat(-191, 12), 44}}) {
        RecognizedCoeff rc = recognize_in_K(f, embed(f, AlgNum(a, b), prec + 32), prec);
        ASSERT_TRUE(rc.recognized);
        EXPECT_EQ(rc.a, a);
        EXPECT_EQ(rc.b, b);
        EXPECT_LT(rc.residual, std::ldexp(1.0L, -200));
    }
}

TEST(Recognize, RejectsTranscendental)
{
    FieldParams f = make_field(-11);
    Bits wp = prec + 32;
    ApComplex z(Real::pi(wp), Real(1L, wp) / Real(3L, wp) + exp(Real(1L, wp)));
    EXPECT_FALSE(recognize_in_K(f, z, prec).recognized);
}

TEST(Recognize, RationalReconstruct)
{
    mpq_class x = mpq_class(355, 113) + mpq_class(1, mpz_class("100000000000000000000"));
    auto r = detail::rational_reconstruct(x, mpz_class(1000), mpq_class(1, mpz_class("1000000000000000")));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, mpq_class(355, 113));
    EXPECT_FALSE(detail::rational_reconstruct(x, mpz_class(100), mpq_class(1, mpz_class("1000000000000000"))).has_value());
    auto n = detail::rational_reconstruct(mpq_class(-42), mpz_class(1), mpq_class(0));
    ASSERT_TRUE(n.has_value());
    EXPECT_EQ(*n, -42);
}

TEST(Recognize, ConjugateClosedOrbit)
{
    // 1 +- sqrt(-7) are the roots of x^2 - 2x + 8
    FieldParams f = make_field(-7);
    Bits wp = prec + 32;
    Real s = sqrt(Real(7L, wp));
    std::vector<ApComplex> v{ApComplex(Real(1L, wp), s), ApComplex(Real(1L, wp), -s)};
    expect_integer_poly(orbit_polynomial(f, v, prec), {8, -2, 1});
    // a single non-rational root leaves coefficients in K but not in Q
    OrbitPolynomial one = orbit_polynomial(f, {v[0]}, prec);
    ASSERT_TRUE(one.all_recognized);
    EXPECT_NE(one.recognized[0].b, 0);
    expect_error(ErrorCode::InvalidArgument, [&] { orbit_polynomial(f, {}, prec); });
}

TEST(Recognize, Clusters)
{
    Bits wp = 128;
    std::vector<ApComplex> v{ApComplex(1L, wp), ApComplex(2L, wp), ApComplex(Real(1L, wp) + Real(1L, wp) / Real(1000000000L, wp) / Real(1000000000L, wp) / Real(1000000000000L, wp), Real(0L, wp))};
    EXPECT_EQ(detail::cluster_count(v, 1e-20L), 2);
    EXPECT_EQ(detail::cluster_count(v, 1e-40L), 3);
    EXPECT_EQ(detail::cluster_count(v, 5), 1);
    EXPECT_NEAR(static_cast<double>(detail::min_gap(v)), 1e-30, 1e-37);
}

TEST(HilbertClassPolynomial, Known)
{
    FieldParams f15 = make_field(-15);
    expect_integer_poly(orbit_polynomial(f15, j_at_forms(-15, prec), prec), {mpz_class(-121287375), 191025, 1});
    FieldParams f23 = make_field(-23);
    expect_integer_poly(orbit_polynomial(f23, j_at_forms(-23, prec), prec),
                        {mpz_class("12771880859375"), mpz_class(-5151296875), 3491750, 1});
}

TEST(JOrbit, RingClassFieldDegree)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-15, 7}}) {
        FieldParams f = make_field(d);
        JOrbitCheck jc = j_orbit_check(f, N, prec);
        EXPECT_EQ(jc.degree, order_class_number(f, N));
        EXPECT_EQ(jc.distinct, jc.degree);
        EXPECT_TRUE(jc.integral) << d << " " << N;
    }
    EXPECT_EQ(j_orbit_check(make_field(-7), 5, prec).degree, 6);
}

TEST(Certificate, CorollaryCertified)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}, {-4, 5}, {-3, 5}, {-15, 7}}) {
        FieldParams f = make_field(d);
        GenerationCertificate c = verify_corollary_main(f, N);
        EXPECT_EQ(c.verdict, Verdict::Certified) << d << " " << N;
        EXPECT_EQ(c.orbit_size, RayClassGroup(make_modulus(f, N)).order());
        EXPECT_EQ(c.orbit_size, c.expected_degree);
        EXPECT_GT(c.margin_ratio(), certificate_margin);
        EXPECT_EQ(c.claim, Claim::CorollaryMain);
    }
}

TEST(Certificate, TheoremCertified)
{
    for (auto [d, N] : std::vector<std::pair<i64, i64>>{{-7, 5}, {-11, 5}}) {
        FieldParams f = make_field(d);
        GenerationCertificate c = verify_theorem_relativenorm(f, N);
        EXPECT_EQ(c.verdict, Verdict::Certified) << d << " " << N;
        EXPECT_EQ(c.expected_degree, static_cast<int>(reduced_forms(N * N * d).size()));
        EXPECT_EQ(c.orbit_size, c.expected_degree);
        EXPECT_LT(c.coset_consistency, std::ldexp(1.0L, -180));
        // conjugates over K form a polynomial with coefficients in K
        EXPECT_TRUE(c.polynomial.all_recognized);
    }
}

TEST(Certificate, StableUnderPrecisionIncrease)
{
    FieldParams f = make_field(-7);
    GenerationCertificate lo = verify_corollary_main(f, 5, {prec, false});
    GenerationCertificate hi = verify_corollary_main(f, 5, {prec + 64, false});
    ASSERT_EQ(lo.polynomial.recognized.size(), hi.polynomial.recognized.size());
    for (std::size_t k = 0; k < lo.polynomial.recognized.size(); ++k) {
        EXPECT_EQ(lo.polynomial.recognized[k].a, hi.polynomial.recognized[k].a);
        EXPECT_EQ(lo.polynomial.recognized[k].b, hi.polynomial.recognized[k].b);
    }
    EXPECT_EQ(hi.attempts, std::vector<Bits>{prec + 64});
}

TEST(Certificate, JudgeVerdicts)
{
    FieldParams f = make_field(-7);
    Bits wp = prec + 32;
    GenerationCertificate c;
    c.values = {ApComplex(1L, wp), ApComplex(2L, wp), ApComplex(1L, wp)};
    c.expected_degree = 3;
    detail::judge(c, f, prec);
    EXPECT_EQ(c.verdict, Verdict::Failed);
    EXPECT_EQ(c.orbit_size, 2);

    GenerationCertificate loose;
    for (long v : {1L, 2L, 3L}) loose.values.push_back(ApComplex(Real(v, wp), Real(0L, wp), 0.01L));
    loose.expected_degree = 3;
    detail::judge(loose, f, prec);
    EXPECT_EQ(loose.orbit_size, 3);
    EXPECT_EQ(loose.verdict, Verdict::Inconclusive);

    GenerationCertificate ok;
    ok.values = {ApComplex(1L, wp), ApComplex(2L, wp), ApComplex(3L, wp)};
    ok.expected_degree = 3;
    detail::judge(ok, f, prec);
    EXPECT_EQ(ok.verdict, Verdict::Certified);
    expect_integer_poly(ok.polynomial, {-6, 11, -6, 1});
}

TEST(Certificate, Errors)
{
    expect_error(ErrorCode::NNotCoprimeTo6, [] { verify_corollary_main(make_field(-7), 4); });
    expect_error(ErrorCode::NNotCoprimeTo6, [] { verify_theorem_relativenorm(make_field(-7), 9); });
    expect_error(ErrorCode::ModulusTrivial, [] { verify_corollary_main(make_field(-7), 1); });
    expect_error(ErrorCode::ExceptionalField, [] { verify_theorem_relativenorm(make_field(-4), 5); });
    expect_error(ErrorCode::ExceptionalField, [] { verify_theorem_relativenorm(make_field(-3), 5); });
}

TEST(Certificate, Strings)
{
    EXPECT_EQ(to_string(Verdict::Certified), "certified");
    EXPECT_EQ(to_string(Verdict::Inconclusive), "inconclusive");
    EXPECT_EQ(to_string(Claim::TheoremRelativeNorm), "theorem_relativenorm");
    EXPECT_EQ(weber_normalization(1), -31104);
}
