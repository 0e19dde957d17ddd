#pragma once

// The one-parameter family
//
//     Q_a(x)   = n (x - a_1/n)(x - a_2) ... (x - a_{n-1})
//     P_{a,b}  = b + integral_0^x Q_a(t) dt
//
// whose discriminant is, up to a global sign, the product of the shifted
// critical values n^n (P_{a,0}(a_1/n) + b) * prod_{i>=2} (P_{a,0}(a_i) + b).

#include "crt.hpp"
#include "resultant.hpp"
#include "sturm.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sqfdisc {

/// A concrete member of the family together with the admissible b values:
/// b in b_congruence, and b inside b_interval when one is present.
struct FamilyParams {
    int n = 2;
    std::vector<Integer> a;
    Congruence b_congruence{0, 1};
    std::optional<RationalInterval> b_interval;
    Integer q = 1;

    void validate() const {
        if (n < 2) throw std::invalid_argument("FamilyParams: n must be >= 2");
        if (a.size() != static_cast<std::size_t>(n - 1)) throw std::invalid_argument("FamilyParams: a must have n-1 entries");
        if (b_congruence.modulus < 1) throw std::invalid_argument("FamilyParams: b modulus must be >= 1");
        if (q < 1) throw std::invalid_argument("FamilyParams: q must be positive");
    }
    [[nodiscard]] bool admits(const Integer& b) const {
        return b_congruence.contains(b) && (!b_interval || b_interval->contains(Rational(b)));
    }
    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

namespace detail {

inline void check_family_shape(int n, std::size_t length) {
    if (n < 2) throw std::invalid_argument("family: n must be >= 2");
    if (length != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("family: expected " + std::to_string(n - 1) + " parameters, got " + std::to_string(length));
}

inline std::vector<Rational> as_rationals(std::span<const Integer> a) { return {a.begin(), a.end()}; }

}  // namespace detail

/// The critical points a_1/n, a_2, ..., a_{n-1} of P_{a,b}.
inline std::vector<Rational> critical_points(int n, std::span<const Rational> a) {
    detail::check_family_shape(n, a.size());
    std::vector<Rational> out(a.begin(), a.end());
    out[0] /= n;
    return out;
}

inline RatPoly build_Q(int n, std::span<const Rational> a) {
    RatPoly q = RatPoly::constant(Rational(n));
    for (const auto& c : critical_points(n, a)) q *= RatPoly::linear_root(c);
    return q;
}
inline RatPoly build_Q(int n, std::span<const Integer> a) { return build_Q(n, detail::as_rationals(a)); }

inline RatPoly build_P(int n, std::span<const Rational> a, const Rational& b) {
    return integral(build_Q(n, a)) + RatPoly::constant(b);
}
inline RatPoly build_P(int n, std::span<const Integer> a, const Rational& b) {
    return build_P(n, detail::as_rationals(a), b);
}

/// P_{a,b} as an integer polynomial; throws std::domain_error if some
/// coefficient is not integral.
inline IntPoly build_integer_P(int n, std::span<const Integer> a, const Integer& b) {
    return to_integer(build_P(n, a, Rational(b)));
}

/// P_{a,0} has integral coefficients (then so does P_{a,b} for every integer b).
inline bool has_integral_family(int n, std::span<const Integer> a) {
    return has_integer_coefficients(build_P(n, a, Rational(0)));
}

struct CriticalData {
    std::vector<Rational> critical_points;
    Rational v1;              // n^n P_{a,0}(a_1/n)
    std::vector<Rational> v;  // P_{a,0}(a_i), i = 2..n-1
    bool integral = true;     // every value above is an integer

    /// -v1/n^n, -v_2, ..., -v_{n-1}: the b values where P_{a,b} acquires a double root.
    [[nodiscard]] std::vector<Rational> degenerate_b(int n) const {
        std::vector<Rational> out{Rational(-v1 / Rational(pow(Integer(n), static_cast<unsigned long>(n))))};
        for (const auto& x : v) out.emplace_back(-x);
        return out;
    }
};

inline CriticalData critical_values(int n, std::span<const Rational> a) {
    RatPoly p0 = build_P(n, a, Rational(0));
    CriticalData out;
    out.critical_points = critical_points(n, a);
    out.v1 = p0(out.critical_points[0]) * Rational(pow(Integer(n), static_cast<unsigned long>(n)));
    for (std::size_t i = 1; i < out.critical_points.size(); ++i) out.v.push_back(p0(out.critical_points[i]));
    out.integral = out.v1.get_den() == 1;
    for (const auto& x : out.v) out.integral = out.integral && x.get_den() == 1;
    return out;
}
inline CriticalData critical_values(int n, std::span<const Integer> a) {
    return critical_values(n, detail::as_rationals(a));
}

/// c b + d
struct LinearForm {
    Integer c;
    Integer d;

    [[nodiscard]] Integer operator()(const Integer& b) const { return c * b + d; }
    [[nodiscard]] Rational operator()(const Rational& b) const { return Rational(c) * b + Rational(d); }
    [[nodiscard]] Rational root() const { return make_rational(Integer(-d), c); }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Delta_{a,b} = sign * prod (c_i b + d_i) as polynomials in b.
struct LinearFactorSystem {
    int sign = 1;
    std::vector<LinearForm> factors;

    [[nodiscard]] Integer evaluate(const Integer& b) const {
        Integer acc = sign;
        for (const auto& f : factors) acc *= f(b);
        return acc;
    }
    [[nodiscard]] Rational evaluate(const Rational& b) const {
        Rational acc = sign;
        for (const auto& f : factors) acc *= f(b);
        return acc;
    }
    [[nodiscard]] IntPoly as_polynomial() const {
        IntPoly acc = IntPoly::constant(Integer(sign));
        for (const auto& f : factors) acc *= IntPoly({f.d, f.c});
        return acc;
    }
    /// No two factors share a root, i.e. the product is squarefree in Q[b].
    [[nodiscard]] bool pairwise_coprime() const {
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j)
                if (factors[i].c * factors[j].d == factors[j].c * factors[i].d) return false;
        return true;
    }
    /// The same system in the variable u with b = m u + r.
    [[nodiscard]] LinearFactorSystem substitute(const Integer& m, const Integer& r) const {
        LinearFactorSystem out{sign, {}};
        for (const auto& f : factors) out.factors.push_back({f.c * m, f.c * r + f.d});
        return out;
    }
    friend bool operator==(const LinearFactorSystem&, const LinearFactorSystem&) = default;
};

namespace detail {

/// sign and the rational forms (n^n, v1), (1, v_i); the sign is read off one
/// direct discriminant at the smallest b0 >= 0 avoiding every root, and the
/// magnitude is checked there as well.
inline std::pair<int, std::vector<std::pair<Rational, Rational>>> rational_linear_factors(int n, std::span<const Rational> a,
                                                                                          const CriticalData& crit) {
    std::vector<std::pair<Rational, Rational>> forms;
    forms.emplace_back(Rational(pow(Integer(n), static_cast<unsigned long>(n))), crit.v1);
    for (const auto& x : crit.v) forms.emplace_back(Rational(1), x);
    auto product = [&](const Rational& b) {
        Rational acc = 1;
        for (const auto& [c, d] : forms) acc *= c * b + d;
        return acc;
    };
    Integer b0 = 0;
    while (product(Rational(b0)) == 0) ++b0;
    Rational direct = discriminant(build_P(n, a, Rational(b0)));
    Rational value = product(Rational(b0));
    if (abs(direct) != abs(value))
        throw std::logic_error("disc_linear_factorization: product formula disagrees with the direct discriminant");
    return {sgn(direct) == sgn(value) ? 1 : -1, std::move(forms)};
}

}  // namespace detail

/// Splits Delta_{a,b} into the linear forms (n^n, v1), (1, v_i) with a global
/// sign. Requires integral critical values.
inline LinearFactorSystem disc_linear_factorization(int n, std::span<const Integer> a) {
    CriticalData crit = critical_values(n, a);
    if (!crit.integral) throw std::domain_error("disc_linear_factorization: critical values are not integral");
    auto ra = detail::as_rationals(a);
    auto [sign, forms] = detail::rational_linear_factors(n, ra, crit);
    LinearFactorSystem sys{sign, {}};
    for (const auto& [c, d] : forms) sys.factors.push_back({c.get_num(), d.get_num()});
    return sys;
}

/// Direct discriminant of P_{a,b} against sign * product, for every sample b.
/// Both sides are polynomials of degree n-1 in b, so n distinct samples that
/// agree prove the identity outright. Works for rational critical values too.
inline bool check_identity(int n, std::span<const Rational> a, std::span<const Rational> b_samples) {
    CriticalData crit = critical_values(n, a);
    auto [sign, forms] = detail::rational_linear_factors(n, a, crit);
    for (const auto& b : b_samples) {
        Rational rhs = sign;
        for (const auto& [c, d] : forms) rhs *= c * b + d;
        if (discriminant(build_P(n, a, b)) != rhs) return false;
    }
    return true;
}
inline bool check_identity(int n, std::span<const Integer> a, std::span<const Integer> b_samples) {
    auto ra = detail::as_rationals(a);
    auto rb = detail::as_rationals(b_samples);
    return check_identity(n, ra, rb);
}

}  // namespace sqfdisc
