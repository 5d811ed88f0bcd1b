#pragma once

// Arbitrary-precision complex numbers carrying a scalar error radius: the
// exact quantity being approximated lies in the closed disc of radius `err`
// around (re, im). Radii grow conservatively through every operation; this
// is deliberately not full interval arithmetic.

#include "cmray/errors.hpp"
#include "cmray/real.hpp"

#include <cmath>
#include <string>

namespace cmray {

namespace detail {
// Slack applied to every radius update so long double rounding never makes
// a radius too small.
constexpr long double radius_slack = 1.0L + 1e-15L;

inline Radius rounding_radius(long double magnitude, Bits prec)
{
    return magnitude * std::ldexp(1.0L, static_cast<int>(2 - prec));
}
} // namespace detail

class ApComplex {
  public:
    explicit ApComplex(Bits prec = 64) : re_(prec), im_(prec) {}
    ApComplex(Real re, Real im, Radius err = 0) : re_(std::move(re)), im_(std::move(im)), err_(err)
    {
        if (im_.prec() < re_.prec()) im_ = Real(im_) * Real(1L, re_.prec());
    }
    ApComplex(long re, Bits prec) : re_(re, prec), im_(prec) {}
    ApComplex(mpq_class const& re, mpq_class const& im, Bits prec)
        : re_(re, prec), im_(im, prec), err_(detail::rounding_radius(mod_ld(), prec))
    {}

    static ApComplex from_double(double re, double im, Bits prec)
    {
        return ApComplex(Real(re, prec), Real(im, prec));
    }

    /// e^{2 pi i theta} for an exact rational angle; theta is reduced mod 1 first.
    static ApComplex unit_root(mpq_class theta, Bits prec)
    {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), theta.get_num_mpz_t(), theta.get_den_mpz_t());
        theta -= fl;
        Real ang = Real::pi(prec) * Real(theta, prec) * 2L;
        Real s, c;
        sin_cos(ang, s, c);
        return ApComplex(std::move(c), std::move(s), detail::rounding_radius(2.0L, prec));
    }

    Real const& re() const { return re_; }
    Real const& im() const { return im_; }
    Radius err() const { return err_; }
    Bits prec() const { return re_.prec(); }

    ApComplex& widen(Radius extra)
    {
        err_ = (err_ + extra) * detail::radius_slack;
        return *this;
    }

    Real abs() const { return hypot(re_, im_); }
    Real arg() const { return atan2(im_, re_); }
    long double mod_ld() const { return hypot(re_, im_).to_ld(); }
    Real norm() const { return re_ * re_ + im_ * im_; }

    ApComplex conj() const { return ApComplex(re_, -im_, err_); }

    /// True when the disc around the value excludes zero.
    bool certainly_nonzero() const { return mod_ld() > err_; }

    ApComplex& operator+=(ApComplex const& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        err_ = (err_ + o.err_ + detail::rounding_radius(mod_ld(), prec())) * detail::radius_slack;
        return *this;
    }
    ApComplex& operator-=(ApComplex const& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        err_ = (err_ + o.err_ + detail::rounding_radius(mod_ld(), prec())) * detail::radius_slack;
        return *this;
    }
    ApComplex& operator*=(ApComplex const& o)
    {
        long double ma = mod_ld(), mb = o.mod_ld();
        Real r = re_ * o.re_ - im_ * o.im_;
        Real i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        err_ = (ma * o.err_ + mb * err_ + err_ * o.err_ + detail::rounding_radius(ma * mb, prec()))
               * detail::radius_slack;
        return *this;
    }
    ApComplex& operator/=(ApComplex const& o)
    {
        long double mb = o.mod_ld();
        if (!(mb > o.err_)) fail(ErrorCode::InvalidArgument, "division by a value whose disc contains zero");
        long double ma = mod_ld();
        Real den = o.norm();
        Real r = (re_ * o.re_ + im_ * o.im_) / den;
        Real i = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(r);
        im_ = std::move(i);
        long double q = ma / mb;
        err_ = ((err_ + q * o.err_) / (mb - o.err_) + detail::rounding_radius(q, prec())) * detail::radius_slack;
        return *this;
    }
    ApComplex& operator*=(long k)
    {
        re_ *= k;
        im_ *= k;
        err_ = (err_ * std::fabs(static_cast<long double>(k)) + detail::rounding_radius(mod_ld(), prec()))
               * detail::radius_slack;
        return *this;
    }
    ApComplex& operator*=(Real const& k)
    {
        long double mk = std::fabs(k.to_ld());
        re_ *= k;
        im_ *= k;
        err_ = (err_ * mk + detail::rounding_radius(mod_ld(), prec())) * detail::radius_slack;
        return *this;
    }
    ApComplex& operator/=(long k)
    {
        re_ /= k;
        im_ /= k;
        err_ = (err_ / std::fabs(static_cast<long double>(k)) + detail::rounding_radius(mod_ld(), prec()))
               * detail::radius_slack;
        return *this;
    }

    friend ApComplex operator+(ApComplex a, ApComplex const& b) { a += b; return a; }
    friend ApComplex operator-(ApComplex a, ApComplex const& b) { a -= b; return a; }
    friend ApComplex operator*(ApComplex a, ApComplex const& b) { a *= b; return a; }
    friend ApComplex operator/(ApComplex a, ApComplex const& b) { a /= b; return a; }
    friend ApComplex operator*(ApComplex a, long k) { a *= k; return a; }
    friend ApComplex operator*(ApComplex a, Real const& k) { a *= k; return a; }
    friend ApComplex operator/(ApComplex a, long k) { a /= k; return a; }
    friend ApComplex operator-(ApComplex a)
    {
        a.re_ = -a.re_;
        a.im_ = -a.im_;
        return a;
    }

    std::string str(int digits = 20) const { return re_.str(digits) + (im_.sign() < 0 ? " - " : " + ") + abs_str(im_, digits) + "i"; }

  private:
    static std::string abs_str(Real const& x, int digits) { return cmray::abs(x).str(digits); }

    Real re_, im_;
    Radius err_ = 0;
};

/// |a - b| as a long double (the center distance, radii not included).
inline long double distance(ApComplex const& a, ApComplex const& b) { return (a - b).mod_ld(); }

/// |a - b| / |b|.
inline long double relative_residual(ApComplex const& a, ApComplex const& b)
{
    return (a - b).mod_ld() / b.mod_ld();
}

inline ApComplex square(ApComplex const& z) { return z * z; }

inline ApComplex pow(ApComplex const& z, unsigned long n)
{
    ApComplex result(1L, z.prec());
    ApComplex base = z;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

/// exp(z). The radius bound uses |e^{z+d} - e^z| <= |e^z| (e^{|d|} - 1).
inline ApComplex exp(ApComplex const& z)
{
    Real m = cmray::exp(z.re());
    Real s, c;
    sin_cos(z.im(), s, c);
    ApComplex out(m * c, m * s);
    long double mag = m.to_ld();
    out.widen(mag * std::expm1(z.err()) + detail::rounding_radius(mag, z.prec()) * 4);
    return out;
}

/// Principal branch of log(z); requires the disc around z to exclude 0.
inline ApComplex log(ApComplex const& z)
{
    long double m = z.mod_ld();
    if (!(m > z.err())) fail(ErrorCode::InvalidArgument, "log of a value whose disc contains zero");
    ApComplex out(cmray::log(z.abs()), z.arg());
    out.widen(-std::log1p(-z.err() / m) + detail::rounding_radius(1.0L + std::fabs(out.re().to_ld()), z.prec()) * 4);
    return out;
}

/// i * pi * x for a real x, used throughout the q-series code.
inline ApComplex i_pi_times(ApComplex const& z)
{
    Real pi = Real::pi(z.prec());
    ApComplex out(-(z.im() * pi), z.re() * pi);
    out.widen(z.err() * 3.1415926535897932385L * detail::radius_slack + detail::rounding_radius(out.mod_ld(), z.prec()));
    return out;
}

} // namespace cmray
