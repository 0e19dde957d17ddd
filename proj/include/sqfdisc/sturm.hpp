#pragma once

// Real root counting with Sturm sequences. Everything is exact: endpoints are
// rationals or infinite, and signs are computed on integer-scaled values.

#include "resultant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sqfdisc {

/// Open interval (lo, hi); a missing endpoint means -infinity / +infinity.
struct RationalInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    static RationalInterval whole_line() { return {}; }

    [[nodiscard]] bool bounded() const { return lo && hi; }
    [[nodiscard]] bool empty() const { return lo && hi && *lo >= *hi; }
    [[nodiscard]] bool contains(const Rational& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }
    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

inline std::string to_string(const RationalInterval& iv) {
    return "(" + (iv.lo ? to_string(*iv.lo) : std::string("-inf")) + ", " +
           (iv.hi ? to_string(*iv.hi) : std::string("+inf")) + ")";
}

/// Sign of p(x) for rational x, via den^deg * p(num/den) in Z.
inline int sign_at(const IntPoly& p, const Rational& x) {
    if (p.is_zero()) return 0;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    Integer acc = p.lead();
    Integer den_power = 1;
    for (int i = p.degree() - 1; i >= 0; --i) {
        den_power *= den;
        acc = acc * num + p.coeffs()[static_cast<std::size_t>(i)] * den_power;
    }
    return sgn(acc);
}

/// Sign of p at +infinity (toward_positive) or -infinity.
inline int sign_at_infinity(const IntPoly& p, bool toward_positive) {
    if (p.is_zero()) return 0;
    int s = sgn(p.lead());
    if (!toward_positive && p.degree() % 2 == 1) s = -s;
    return s;
}

/// Sturm chain of a squarefree polynomial, each member made primitive with a
/// positive scaling so that signs are preserved.
inline std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
    std::vector<IntPoly> seq;
    seq.push_back(primitive_part(p));
    if (p.degree() < 1) return seq;
    seq.push_back(primitive_part(p.derivative()));
    while (seq.back().degree() > 0) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        IntPoly r = pseudo_remainder(a, b);
        // prem = lc(b)^(da-db+1) * rem; undo a negative multiplier
        int exponent = a.degree() - b.degree() + 1;
        if (b.lead() < 0 && exponent % 2 == 1) r = -r;
        if (r.is_zero()) break;
        r = -r;
        Integer c = content(r);
        seq.push_back(detail::divide_coefficients(r, c));
    }
    return seq;
}

namespace detail {

inline int count_variations(const std::vector<int>& signs) {
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

inline int variations_at(const std::vector<IntPoly>& seq, const std::optional<Rational>& x, bool plus_infinity) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& q : seq) signs.push_back(x ? sign_at(q, *x) : sign_at_infinity(q, plus_infinity));
    return count_variations(signs);
}

}  // namespace detail

/// Number of distinct real roots of p inside the open interval (default: all reals).
inline int real_root_count(const IntPoly& p, const RationalInterval& range = {}) {
    if (p.is_zero()) throw std::domain_error("real_root_count of the zero polynomial");
    if (range.empty()) return 0;
    IntPoly sf = squarefree_part(p);
    if (sf.degree() < 1) return 0;
    auto seq = sturm_sequence(sf);
    // V(-inf) - V(x) counts roots <= x, including x itself when it is a root
    int at_lo = detail::variations_at(seq, range.lo, false);
    int at_hi = detail::variations_at(seq, range.hi, true);
    int count = at_lo - at_hi;
    if (range.hi && sign_at(sf, *range.hi) == 0) --count;
    return count;
}

inline int real_root_count(const RatPoly& p, const RationalInterval& range = {}) {
    return real_root_count(clear_denominators(p), range);
}

}  // namespace sqfdisc
