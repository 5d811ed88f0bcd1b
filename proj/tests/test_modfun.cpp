#include "cmray/modfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

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

ApComplex cx(double re, double im, Bits p = prec) { return ApComplex::from_double(re, im, p); }

ApComplex q(long a, long b) { return ApComplex(mpq_class(a, b), mpq_class(0), prec); }

FrickeLabel lab(long a, long b, long c, long d) { return make_label(mpq_class(a, b), mpq_class(c, d)); }

// S and T act on tau
ApComplex T(ApComplex const& t) { return t + ApComplex(1L, t.prec()); }
ApComplex S(ApComplex const& t) { return -(ApComplex(1L, t.prec()) / t); }

// j(tau) in double precision from its q-expansion through E4, E6
std::complex<double> j_double(std::complex<double> tau)
{
    std::complex<double> qq = std::exp(std::complex<double>(0, 2 * M_PI) * tau);
    std::complex<double> e4 = 1, e6 = 1, qn = 1;
    for (int n = 1; n < 200; ++n) {
        qn *= qq;
        double s3 = 0, s5 = 0;
        for (int k = 1; k <= n; ++k) {
            if (n % k) continue;
            s3 += std::pow(k, 3);
            s5 += std::pow(k, 5);
        }
        e4 += 240.0 * s3 * qn;
        e6 -= 504.0 * s5 * qn;
    }
    std::complex<double> e43 = e4 * e4 * e4;
    return 1728.0 * e43 / (e43 - e6 * e6);
}

std::complex<double> to_std(ApComplex const& z) { return {static_cast<double>(z.re().to_ld()), static_cast<double>(z.im().to_ld())}; }

} // namespace

TEST(ModularForms, JAtClassNumberOnePoints)
{
    std::vector<std::pair<i64, std::string>> known{{-3, "0"},
                                                   {-4, "1728"},
                                                   {-7, "-3375"},
                                                   {-8, "8000"},
                                                   {-11, "-32768"},
                                                   {-19, "-884736"},
                                                   {-43, "-884736000"},
                                                   {-67, "-147197952000"},
                                                   {-163, "-262537412640768000"}};
    for (auto const& [d, s] : known) {
        FieldParams f = make_field(d);
        ModularValues mv = eval_g2g3_delta_j(tau_K(f, prec), prec);
        ApComplex expect(mpq_class(s), mpq_class(0), prec);
        long double scale = std::max(1.0L, expect.mod_ld());
        EXPECT_LT(distance(mv.j, expect) / scale, tol) << d;
        EXPECT_LE(mv.j.err() / scale, std::ldexp(1.0L, -190)) << d;
    }
}

TEST(ModularForms, JAgreesWithDoublePrecisionSeries)
{
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.1, 1.1}, {-0.37, 0.9}, {0.45, 1.7}, {0.0, 2.3}}) {
        ApComplex j = eval_g2g3_delta_j(cx(x, y), prec).j;
        std::complex<double> jd = j_double({x, y});
        EXPECT_LT(std::abs(to_std(j) - jd) / std::abs(jd), 1e-11) << x << " " << y;
    }
}

TEST(ModularForms, JIsModularInvariant)
{
    ApComplex t = cx(0.21, 1.05);
    ApComplex j = eval_g2g3_delta_j(t, prec).j;
    EXPECT_LT(relative_residual(eval_g2g3_delta_j(T(t), prec).j, j), tol);
    EXPECT_LT(relative_residual(eval_g2g3_delta_j(S(t), prec).j, j), tol);
}

TEST(ModularForms, DeltaTwoWays)
{
    for (ApComplex t : {cx(0.3, 1.2), cx(-0.1, 0.8), cx(0.5, 1.5)}) {
        ModularValues mv = eval_g2g3_delta_j(t, prec);
        EXPECT_LT(relative_residual(mv.delta, delta_product(t, prec)), tol);
        // Delta = g2^3 - 27 g3^2
        EXPECT_LT(relative_residual(pow(mv.g2, 3) - square(mv.g3) * 27L, mv.delta), tol);
    }
}

TEST(Weierstrass, LaurentExpansionNearZero)
{
    ApComplex t = cx(0.17, 1.3);
    ModularValues mv = eval_g2g3_delta_j(t, prec);
    ApComplex z = cx(1e-3, 2e-3);
    ApComplex z2 = square(z);
    ApComplex one(1L, prec);
    // 1/z^2 + g2 z^2/20 + g3 z^4/28 + g2^2 z^6/1200 + 3 g2 g3 z^8 / 6160
    ApComplex series = one / z2 + mv.g2 * z2 / 20L + mv.g3 * square(z2) / 28L + square(mv.g2) * pow(z2, 3) / 1200L
                       + mv.g2 * mv.g3 * pow(z2, 4) * 3L / 6160L;
    // next term is O(z^10) ~ 1e-27 relative to 1/z^2 ~ 2e5
    EXPECT_LT(distance(wp(z, t, prec), series), 1e-20L);
}

TEST(Weierstrass, DifferentialEquation)
{
    ApComplex t = cx(-0.23, 1.1);
    ModularValues mv = eval_g2g3_delta_j(t, prec);
    for (ApComplex z : {cx(0.13, 0.27), cx(0.41, 0.05), cx(-0.2, 0.6)}) {
        // central difference with h = 2^-60 gives ~2^-120 accuracy
        ApComplex h(Real(std::ldexp(1.0, -60), prec), Real(prec));
        ApComplex d = (wp(z + h, t, prec) - wp(z - h, t, prec)) / ApComplex(Real(std::ldexp(1.0, -59), prec), Real(prec));
        ApComplex p = wp(z, t, prec);
        ApComplex rhs = pow(p, 3) * 4L - mv.g2 * p - mv.g3;
        EXPECT_LT(relative_residual(square(d), rhs), 1e-30L);
    }
}

TEST(Weierstrass, HalfPeriodsAreRootsOfCubic)
{
    ApComplex t = cx(0.3, 1.4);
    ModularValues mv = eval_g2g3_delta_j(t, prec);
    ApComplex half = q(1, 2);
    ApComplex e1 = wp(half, t, prec), e2 = wp(t * half, t, prec), e3 = wp((t + ApComplex(1L, prec)) * half, t, prec);
    EXPECT_LT((e1 + e2 + e3).mod_ld(), tol * e1.mod_ld());
    for (ApComplex const& e : {e1, e2, e3}) {
        EXPECT_LT((pow(e, 3) * 4L - mv.g2 * e - mv.g3).mod_ld(), tol * pow(e, 3).mod_ld() * 8);
    }
}

TEST(Weierstrass, EvenAndPeriodic)
{
    ApComplex t = cx(0.05, 0.95);
    ApComplex z = cx(0.31, 0.12);
    ApComplex p = wp(z, t, prec);
    EXPECT_LT(relative_residual(wp(-z, t, prec), p), tol);
    EXPECT_LT(relative_residual(wp(z + ApComplex(1L, prec), t, prec), p), tol);
    EXPECT_LT(relative_residual(wp(z + t, t, prec), p), tol);
    EXPECT_LT(relative_residual(wp(z - t * 3L + ApComplex(2L, prec), t, prec), p), tol);
}

TEST(Fricke, TransformationLaws)
{
    ApComplex t = cx(0.12, 1.25);
    for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {2, 3}, {4, 1}, {3, 3}}) {
        FrickeLabel v = lab(a, 5, b, 5);
        for (int k = 1; k <= 3; ++k) {
            // f_[r1; r2](tau + 1) = f_[r1; r1 + r2](tau)
            EXPECT_LT(relative_residual(fricke(k, v, T(t), prec), fricke(k, make_label(v.r1, v.r1 + v.r2), t, prec)), tol);
            // f_[r1; r2](-1/tau) = f_[r2; -r1](tau)
            EXPECT_LT(relative_residual(fricke(k, v, S(t), prec), fricke(k, make_label(v.r2, -v.r1), t, prec)), tol);
        }
    }
}

TEST(Fricke, LabelInvariance)
{
    ApComplex t = cx(-0.3, 1.1);
    FrickeLabel v = lab(2, 7, 3, 7);
    ApComplex f0 = fricke(1, v, t, prec);
    EXPECT_LT(relative_residual(fricke(1, make_label(-v.r1, -v.r2), t, prec), f0), tol);
    EXPECT_LT(relative_residual(fricke(1, make_label(v.r1 + 3, v.r2 - 5), t, prec), f0), tol);
    EXPECT_TRUE(labels_equivalent(v, make_label(mpq_class(-2, 7) + 1, mpq_class(-3, 7))));
    EXPECT_FALSE(labels_equivalent(v, lab(3, 7, 2, 7)));
}

TEST(Fricke, ValuesAreFrickeFunctionsOfWp)
{
    // f^(1) f^(3)-type relation: (f1)^3 / f3 = g2^3 g3^2 / Delta^2, independent of the point
    ApComplex t = cx(0.2, 1.3);
    ModularValues mv = eval_g2g3_delta_j(t, prec);
    FrickeLabel v = lab(1, 5, 2, 5);
    ApComplex ratio = pow(fricke(1, v, t, prec), 3) / fricke(3, v, t, prec);
    ApComplex expect = pow(mv.g2, 3) * square(mv.g3) / square(mv.delta);
    EXPECT_LT(relative_residual(ratio, expect), tol);
    ApComplex r2 = square(fricke(1, v, t, prec)) / fricke(2, v, t, prec);
    EXPECT_LT(relative_residual(r2, square(mv.g3) / mv.delta), tol);
}

TEST(Fricke, DifferenceAsSiegelQuotient)
{
    ApComplex t = cx(0.3, 1.2);
    std::vector<FrickeLabel> labels{lab(1, 5, 0, 1), lab(0, 1, 1, 5), lab(1, 5, 2, 5), lab(2, 5, 4, 5), lab(3, 7, 1, 7), lab(1, 7, 6, 7)};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t k = i + 1; k < labels.size(); ++k) {
            if (labels[i].N != labels[k].N) continue;
            EXPECT_LT(verify_fricke_siegel_identity(labels[i], labels[k], t, prec), std::ldexp(1.0L, -180)) << labels[i].str() << labels[k].str();
        }
    }
    expect_error(ErrorCode::LabelsEquivalent, [&] { verify_fricke_siegel_identity(lab(1, 5, 2, 5), lab(4, 5, 3, 5), t, prec); });
}

TEST(Siegel, ProductAgreesWithDoublePrecisionFormula)
{
    // g_(0, r2)(tau) = -e^{pi i r2 (0 - 1)} q^{1/12} (1 - zeta) prod (1 - q^n zeta)(1 - q^n / zeta)
    std::complex<double> tau(0.1, 1.2);
    std::complex<double> I(0, 1);
    for (long b : {1L, 2L, 3L}) {
        double r2 = b / 7.0;
        std::complex<double> zeta = std::exp(2 * M_PI * I * r2);
        std::complex<double> p = 1.0 - zeta;
        for (int n = 1; n < 60; ++n) {
            std::complex<double> qn = std::exp(2 * M_PI * I * tau * static_cast<double>(n));
            p *= (1.0 - qn * zeta) * (1.0 - qn / zeta);
        }
        std::complex<double> g = -std::exp(-M_PI * I * r2) * std::exp(2 * M_PI * I * tau / 12.0) * p;
        ApComplex got = siegel_product(mpq_class(0), mpq_class(b, 7), cx(0.1, 1.2), prec);
        EXPECT_LT(std::abs(to_std(got) - g) / std::abs(g), 1e-12);
    }
}

TEST(Siegel, QuasiPeriodicityAndOddness)
{
    ApComplex t = cx(-0.15, 1.05);
    FrickeLabel v = lab(2, 7, 5, 7);
    ApComplex g = siegel_any(v, t, prec);
    // g(-v) = -g(v)
    EXPECT_LT(relative_residual(siegel_any(make_label(-v.r1, -v.r2), t, prec), -g), tol);
    // 12N-th power is invariant under v -> v + Z^2
    for (auto [b1, b2] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {-1, 2}, {3, -2}}) {
        ApComplex h = siegel_any(make_label(v.r1 + b1, v.r2 + b2), t, prec);
        LogValue lh = to_log(h).scaled(12 * 7), lg = to_log(g).scaled(12 * 7);
        EXPECT_LT(relative_residual(lh.exp_value(), lg.exp_value()), std::ldexp(1.0L, -180));
    }
}

TEST(Siegel, TwelfthPowerTransformationLaws)
{
    ApComplex t = cx(0.22, 1.15);
    for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 2}, {3, 1}, {0, 2}}) {
        FrickeLabel v = lab(a, 5, b, 5);
        auto p12 = [&](FrickeLabel const& u, ApComplex const& tau) { return to_log(siegel_any(u, tau, prec)).scaled(12).exp_value(); };
        EXPECT_LT(relative_residual(p12(v, T(t)), p12(make_label(v.r1, v.r1 + v.r2), t)), std::ldexp(1.0L, -190));
        EXPECT_LT(relative_residual(p12(v, S(t)), p12(make_label(v.r2, -v.r1), t)), std::ldexp(1.0L, -190));
    }
}

TEST(Siegel, PowLogMatchesRepeatedMultiplication)
{
    ApComplex t = cx(0.4, 1.0);
    FrickeLabel v = lab(1, 5, 3, 5);
    LogValue l = siegel_pow_log(v, t, prec);
    ApComplex direct = pow(siegel(v, t, prec), 60);
    EXPECT_LT(relative_residual(l.exp_value(), direct), std::ldexp(1.0L, -190));
    EXPECT_EQ(bernoulli2(mpq_class(1, 2)), mpq_class(-1, 12));
}

TEST(Labels, ErrorsAndNormalization)
{
    expect_error(ErrorCode::InvalidLabel, [] { make_label(mpq_class(1), mpq_class(-2)); });
    expect_error(ErrorCode::InvalidLabel, [] { siegel_product(mpq_class(1), mpq_class(1, 3), cx(0, 1), prec); });
    FrickeLabel v = normalize(lab(-1, 5, 7, 5));
    EXPECT_GE(v.r1, 0);
    EXPECT_LT(v.r1, 1);
    EXPECT_GE(v.r2, 0);
    EXPECT_LT(v.r2, 1);
    EXPECT_EQ(v.N, 5);
    EXPECT_EQ(lab(1, 6, 1, 4).N, 12);
}

TEST(Errors, DomainChecks)
{
    expect_error(ErrorCode::NotInUpperHalfPlane, [] { eval_g2g3_delta_j(cx(0.3, -1.0), prec); });
    expect_error(ErrorCode::NotInUpperHalfPlane, [] { wp(cx(0.1, 0.1), cx(0.0, 0.0), prec); });
    expect_error(ErrorCode::PoleAtLatticePoint, [] { wp(cx(0.0, 0.0), cx(0.1, 1.0), prec); });
    expect_error(ErrorCode::PoleAtLatticePoint, [] { wp(T(cx(0.1, 1.0)) - cx(0.1, 1.0) * 3L, cx(0.1, 1.0), prec); });
    expect_error(ErrorCode::PrecisionUnattainable, [] { eval_g2g3_delta_j(cx(0.0, 1e-6), prec); });
    expect_error(ErrorCode::InvalidArgument, [] { fricke(4, lab(1, 5, 0, 1), cx(0.0, 1.0), prec); });
}
