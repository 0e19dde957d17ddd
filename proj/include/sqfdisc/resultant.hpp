#pragma once

/**
 * Resultants and discriminants via the subresultant pseudo-remainder sequence.
 *
 * The subresultant PRS divides each pseudo-remainder by a predictable factor
 * (g * h^delta), which keeps coefficient growth linear in the degree instead
 * of exponential. The bookkeeping follows the classical Collins/Brown
 * formulation: g tracks the leading coefficient of the previous remainder and
 * h the subresultant "scaling" term.
 */

#include "polynomial.hpp"

#include <stdexcept>
#include <utility>

namespace sqfdisc {

namespace detail {

/// b^e / d^(e-1) style updates need exact powers; negative exponents never occur here.
inline Integer ipow(const Integer& b, int e) {
    if (e < 0) throw std::logic_error("negative exponent in subresultant bookkeeping");
    return pow(b, static_cast<unsigned long>(e));
}

inline IntPoly divide_coefficients(const IntPoly& p, const Integer& d) {
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
        out.push_back(std::move(q));
    }
    return IntPoly(std::move(out));
}

}  // namespace detail

/// Res(A, B) = lc(A)^deg(B) * prod_{A(alpha)=0} B(alpha), for nonzero integer polynomials.
inline Integer resultant(const IntPoly& a_in, const IntPoly& b_in) {
    if (a_in.is_zero() || b_in.is_zero()) throw std::domain_error("resultant of a zero polynomial");
    IntPoly a = a_in, b = b_in;
    int sign_flip = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign_flip = -1;
    }
    if (b.degree() == 0) return Integer(sign_flip * detail::ipow(b.lead(), a.degree()));

    Integer ca = content(a), cb = content(b);
    a = detail::divide_coefficients(a, ca);
    b = detail::divide_coefficients(b, cb);
    Integer scale = detail::ipow(ca, b.degree()) * detail::ipow(cb, a.degree());
    Integer g = 1, h = 1;
    int s = sign_flip;
    while (true) {
        int delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        b = detail::divide_coefficients(r, g * detail::ipow(h, delta));
        g = a.lead();
        if (delta > 0) h = detail::ipow(g, delta) / detail::ipow(h, delta - 1);
        if (b.degree() == 0) {
            // deg a >= 1 here
            Integer last = detail::ipow(b.lead(), a.degree()) / detail::ipow(h, a.degree() - 1);
            return Integer(s * scale * last);
        }
    }
}

inline Rational resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant of a zero polynomial");
    Integer da = common_denominator(a), db = common_denominator(b);
    Integer r = resultant(clear_denominators(a), clear_denominators(b));
    return make_rational(r, detail::ipow(da, b.degree()) * detail::ipow(db, a.degree()));
}

/// Discriminant of a monic integer polynomial of degree >= 2:
/// (-1)^(n(n-1)/2) Res(P, P').
inline Integer discriminant(const IntPoly& p) {
    if (p.degree() < 2) throw std::domain_error("discriminant needs degree >= 2");
    if (!p.is_monic()) throw std::domain_error("discriminant expects a monic polynomial");
    int n = p.degree();
    Integer r = resultant(p, p.derivative());
    return ((n * (n - 1) / 2) % 2 == 0) ? r : Integer(-r);
}

/// Discriminant of a monic rational polynomial of degree >= 2.
inline Rational discriminant(const RatPoly& p) {
    if (p.degree() < 2) throw std::domain_error("discriminant needs degree >= 2");
    if (p.lead() != 1) throw std::domain_error("discriminant expects a monic polynomial");
    int n = p.degree();
    Rational r = resultant(p, p.derivative());
    return ((n * (n - 1) / 2) % 2 == 0) ? r : Rational(-r);
}

/// gcd in Z[x]: the primitive gcd times the gcd of the contents; positive leading coefficient.
inline IntPoly gcd(const IntPoly& a_in, const IntPoly& b_in) {
    if (a_in.is_zero()) return primitive_part(b_in);
    if (b_in.is_zero()) return primitive_part(a_in);
    Integer c = gcd(content(a_in), content(b_in));
    IntPoly a = primitive_part(a_in), b = primitive_part(b_in);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : primitive_part(r);
    }
    return primitive_part(a) * c;
}

/// P / gcd(P, P'), primitive.
inline IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() < 1) return primitive_part(p);
    IntPoly g = gcd(p, p.derivative());
    return primitive_part(exact_quotient(primitive_part(p), primitive_part(g)));
}

}  // namespace sqfdisc
