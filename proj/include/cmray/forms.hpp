#pragma once

// Reduced primitive positive definite binary quadratic forms. Exact and
// independent of every floating point path, so class numbers computed here
// serve as oracles for the ray class and field generation code.

#include "cmray/qfield.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace cmray {

struct QuadForm {
    i64 a, b, c;
    i64 disc() const { return b * b - 4 * a * c; }
};

inline std::vector<QuadForm> reduced_forms(i64 D)
{
    std::vector<QuadForm> out;
    if (D >= 0 || detail::mod(D, 4) > 1) fail(ErrorCode::NotADiscriminant, "not a negative discriminant: " + std::to_string(D));
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

inline i64 form_class_number(i64 D) { return static_cast<i64>(reduced_forms(D).size()); }

/// h(O) for the order of conductor n in K, i.e. the number of reduced forms
/// of discriminant n^2 d_K.
inline i64 order_class_number(FieldParams const& f, i64 n)
{
    if (n < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    return form_class_number(detail::mul(detail::mul(n, n), f.disc));
}

inline i64 class_number(FieldParams const& f) { return order_class_number(f, 1); }

} // namespace cmray
