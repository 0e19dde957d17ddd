#pragma once

// Exact integer and rational scalars used throughout the library.
//
// Integer and Rational are GMP's C++ wrappers. Every function here returns a
// fully evaluated value (never a GMP expression template), so callers can use
// `auto` freely.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sqfdisc {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer make_integer(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
    return z;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a" or "a/b".
inline Rational make_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(make_integer(text));
    return make_rational(make_integer(text.substr(0, slash)), make_integer(text.substr(slash + 1)));
}

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str(10);
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

inline Integer abs_value(const Integer& z) { return Integer(abs(z)); }
inline Rational abs_value(const Rational& q) { return Rational(abs(q)); }

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
    return make_rational(pow(base.get_num(), e), pow(base.get_den(), e));
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Floor division a / b, b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }
inline Integer ceil(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

/// Inverse of a modulo m, throws if not invertible.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("no inverse of " + to_string(a) + " modulo " + to_string(m));
    }
    return r;
}

inline bool fits_u64(const Integer& z) {
    return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Integer& z) {
    if (!fits_u64(z)) throw std::overflow_error("integer does not fit in 64 bits: " + to_string(z));
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
    return out;
}

inline Integer from_u64(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return z;
}

inline Integer from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    return Integer(-from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1));
}

/// Reduction of a rational into Z/m; throws when the denominator is not a unit.
inline Integer mod(const Rational& q, const Integer& m) {
    return mod(Integer(q.get_num() * mod_inverse(q.get_den(), m)), m);
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace sqfdisc
