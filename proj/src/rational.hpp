#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace branchcover {

// Exact arbitrary-precision scalars.  All field arithmetic in this project is
// exact; no floating point is used anywhere in the math core.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor_of(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// x - floor(x), always in [0, 1).
inline Rational fractional_part(const Rational& x) {
    Rational r = x - Rational(floor_of(x));
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline bool fits_longlong(const Integer& z) {
    static const Integer lo(std::to_string(static_cast<long long>(-9223372036854775807LL - 1)));
    static const Integer hi("9223372036854775807");
    return z >= lo && z <= hi;
}

inline long long to_longlong(const Integer& z) {
    ensure(fits_longlong(z), "integer out of 64-bit range");
    // mpz_get_si truncates to long; go through string to stay portable.
    return std::stoll(z.get_str());
}

inline std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace branchcover
