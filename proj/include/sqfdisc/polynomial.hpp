#pragma once

// Dense univariate polynomials with exact coefficients, ascending degree order.

#include "integer.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqfdisc {

template <class T>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
    /// x - root
    static Poly linear_root(const T& root) { return Poly(std::vector<T>{T(-root), T(1)}); }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const T& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
        return c_.back();
    }
    [[nodiscard]] T coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : T(0);
    }
    [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
    [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    template <class U>
    [[nodiscard]] U operator()(const U& v) const {
        U acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + U(*it);
        return acc;
    }

    [[nodiscard]] Poly derivative() const {
        std::vector<T> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return Poly(std::move(d));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        normalize();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// p(x) -> p(s * x)
    [[nodiscard]] Poly scale_argument(const T& s) const {
        std::vector<T> out = c_;
        T power = 1;
        for (auto& v : out) {
            v *= power;
            power *= s;
        }
        return Poly(std::move(out));
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
    std::vector<Rational> out;
    for (const auto& v : p.coeffs()) out.emplace_back(v);
    return RatPoly(std::move(out));
}

[[nodiscard]] inline bool has_integer_coefficients(const RatPoly& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rational& q) { return q.get_den() == 1; });
}

/// Exact conversion; throws if any coefficient has a denominator.
inline IntPoly to_integer(const RatPoly& p) {
    std::vector<Integer> out;
    for (const auto& v : p.coeffs()) {
        if (v.get_den() != 1) throw std::domain_error("polynomial has non-integral coefficient " + to_string(v));
        out.push_back(v.get_num());
    }
    return IntPoly(std::move(out));
}

/// Positive integer d such that d * p has integer coefficients (the lcm of denominators).
inline Integer common_denominator(const RatPoly& p) {
    Integer d = 1;
    for (const auto& v : p.coeffs()) d = lcm(d, v.get_den());
    return d;
}

/// d * p as an integer polynomial, d = common_denominator(p).
inline IntPoly clear_denominators(const RatPoly& p) {
    Integer d = common_denominator(p);
    std::vector<Integer> out;
    for (const auto& v : p.coeffs()) out.push_back(v.get_num() * (d / v.get_den()));
    return IntPoly(std::move(out));
}

/// Nonnegative gcd of the coefficients (0 for the zero polynomial).
inline Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) g = gcd(g, v);
    return g;
}

/// p divided by its content, with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Integer> out;
    for (const auto& v : p.coeffs()) out.push_back(v / g);
    return IntPoly(std::move(out));
}

/// Antiderivative with zero constant term.
inline RatPoly integral(const RatPoly& p) {
    std::vector<Rational> out{Rational(0)};
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) out.push_back(make_rational(p.coeffs()[i].get_num(), p.coeffs()[i].get_den() * static_cast<unsigned long>(i + 1)));
    return RatPoly(std::move(out));
}

/// Division with remainder over the rationals.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {RatPoly{}, a};
    std::vector<Rational> quot(static_cast<std::size_t>(da - db + 1), Rational(0));
    for (int i = da; i >= db; --i) {
        Rational f = rem[static_cast<std::size_t>(i)] / b.lead();
        quot[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[x].
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by the zero polynomial");
    int da = a.degree(), db = b.degree();
    if (da < db) return a;
    std::vector<Integer> r = a.coeffs();
    const Integer& lb = b.lead();
    for (int i = da; i >= db; --i) {
        Integer lr = r[static_cast<std::size_t>(i)];
        for (auto& v : r) v *= lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= lr * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return IntPoly(std::move(r));
}

/// Exact division in Z[x]; throws when b does not divide a.
inline IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rational(a), to_rational(b));
    if (!r.is_zero()) throw std::domain_error("exact_quotient: nonzero remainder");
    return to_integer(q);
}

template <class T>
std::vector<std::string> coefficient_strings(const Poly<T>& p) {
    std::vector<std::string> out;
    for (const auto& v : p.coeffs()) out.push_back(to_string(v));
    if (out.empty()) out.emplace_back("0");
    return out;
}

template <class T>
std::string to_string(const Poly<T>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const T& v = p.coeffs()[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        std::string s = to_string(v);
        bool neg = s.front() == '-';
        if (neg) s.erase(0, 1);
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        if (i == 0) {
            out += s;
            continue;
        }
        if (s != "1") out += s + "*";
        out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace sqfdisc
