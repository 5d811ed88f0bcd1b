#pragma once

// Thin RAII wrapper over an MPFR floating point number. Every value carries
// its own precision; binary operations round to the larger of the two.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace cmray {

using Bits = long;

class Real {
  public:
    explicit Real(Bits prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, Bits prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, Bits prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, Bits prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(mpq_class const& q, Bits prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(mpz_class const& z, Bits prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }

    Real(Real const& o, Bits prec) { mpfr_init2(v_, prec); mpfr_set(v_, o.v_, MPFR_RNDN); }

    Real(Real const& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    Real& operator=(Real const& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    Bits prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static Real pi(Bits prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real two_pow(long e, Bits prec) { Real r(prec); mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN); return r; }

    long double to_ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent() const { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }

    /// Decimal string with `digits` significant digits (0 = enough for round trip).
    std::string str(int digits = 0) const
    {
        if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    Real& operator+=(Real const& o) { grow(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(Real const& o) { grow(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(Real const& o) { grow(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(Real const& o) { grow(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

    friend Real operator+(Real a, Real const& b) { a += b; return a; }
    friend Real operator-(Real a, Real const& b) { a -= b; return a; }
    friend Real operator*(Real a, Real const& b) { a *= b; return a; }
    friend Real operator/(Real a, Real const& b) { a /= b; return a; }
    friend Real operator*(Real a, long k) { a *= k; return a; }
    friend Real operator/(Real a, long k) { a /= k; return a; }
    friend Real operator-(Real a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

    friend bool operator<(Real const& a, Real const& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(Real const& a, Real const& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(Real const& a, Real const& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

  private:
    void grow(Real const& o)
    {
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    }

    mpfr_t v_;
};

#define CMRAY_REAL_UNARY(name, fn)                                             \
    inline Real name(Real const& x)                                            \
    {                                                                          \
        Real r(x.prec());                                                      \
        fn(r.get(), x.get(), MPFR_RNDN);                                       \
        return r;                                                              \
    }
CMRAY_REAL_UNARY(sqrt, mpfr_sqrt)
CMRAY_REAL_UNARY(exp, mpfr_exp)
CMRAY_REAL_UNARY(log, mpfr_log)
CMRAY_REAL_UNARY(sin, mpfr_sin)
CMRAY_REAL_UNARY(cos, mpfr_cos)
CMRAY_REAL_UNARY(abs, mpfr_abs)
#undef CMRAY_REAL_UNARY

inline Real floor(Real const& x)
{
    Real r(x.prec());
    mpfr_rint_floor(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real atan2(Real const& y, Real const& x)
{
    Real r(std::max(x.prec(), y.prec()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real hypot(Real const& x, Real const& y)
{
    Real r(std::max(x.prec(), y.prec()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

inline void sin_cos(Real const& x, Real& s, Real& c)
{
    s = Real(x.prec());
    c = Real(x.prec());
    mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
}

/// Nearest integer to x (ties away from zero); x must be finite and moderate.
inline mpz_class round_to_integer(Real const& x)
{
    Real r(x.prec());
    mpfr_round(r.get(), x.get());
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
    return z;
}

/// Radii are kept in long double: its exponent range covers 2^-16000, far
/// below anything the 1024-bit precision ceiling can produce.
using Radius = long double;

/// 2^-bits as a radius.
inline Radius radius_pow2(long bits) { return std::ldexp(1.0L, static_cast<int>(-bits)); }

} // namespace cmray
