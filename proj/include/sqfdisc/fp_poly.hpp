#pragma once

// Polynomials over the prime field F_p (p < 2^63): irreducibility, root
// finding for fully split polynomials, and distinct-degree factorization.

#include "polynomial.hpp"
#include "primes.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sqfdisc {

class FpPoly {
  public:
    using u64 = std::uint64_t;

    FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        if (p < 2 || p >= (u64{1} << 63)) throw std::domain_error("FpPoly: modulus out of range");
        for (auto& v : c_) v %= p_;
        normalize();
    }

    static FpPoly from(const IntPoly& f, u64 p) {
        Integer m = from_u64(p);
        std::vector<u64> out;
        for (const auto& v : f.coeffs()) out.push_back(to_u64(mod(v, m)));
        return FpPoly(p, std::move(out));
    }
    /// Throws if a denominator is divisible by p.
    static FpPoly from(const RatPoly& f, u64 p) {
        Integer m = from_u64(p);
        std::vector<u64> out;
        for (const auto& v : f.coeffs()) out.push_back(to_u64(mod(v, m)));
        return FpPoly(p, std::move(out));
    }
    static FpPoly x(u64 p) { return FpPoly(p, {0, 1}); }

    [[nodiscard]] u64 modulus() const { return p_; }
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::vector<u64>& coeffs() const { return c_; }
    [[nodiscard]] u64 lead() const { return c_.back(); }

    [[nodiscard]] u64 add(u64 a, u64 b) const { return (a + b) % p_; }
    [[nodiscard]] u64 sub(u64 a, u64 b) const { return (a + p_ - b) % p_; }
    [[nodiscard]] u64 mul(u64 a, u64 b) const { return detail::mulmod64(a, b, p_); }
    [[nodiscard]] u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("FpPoly: inverse of zero");
        return detail::powmod64(a, p_ - 2, p_);
    }

    [[nodiscard]] u64 operator()(u64 v) const {
        u64 acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add(mul(acc, v), *it);
        return acc;
    }

    [[nodiscard]] FpPoly monic() const {
        if (is_zero()) return *this;
        u64 li = inv(lead());
        std::vector<u64> out;
        for (auto v : c_) out.push_back(mul(v, li));
        return {p_, std::move(out)};
    }

    [[nodiscard]] FpPoly derivative() const {
        std::vector<u64> out;
        for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(mul(c_[i], i % p_));
        return {p_, std::move(out)};
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            u64 x = i < a.c_.size() ? a.c_[i] : 0;
            u64 y = i < b.c_.size() ? b.c_[i] : 0;
            out[i] = a.sub(x, y);
        }
        return {a.p_, std::move(out)};
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return {a.p_, {}};
        std::vector<u64> out(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = a.add(out[i + j], a.mul(a.c_[i], b.c_[j]));
        return {a.p_, std::move(out)};
    }

    /// (quotient, remainder)
    [[nodiscard]] std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        if (d.is_zero()) throw std::domain_error("FpPoly: division by zero polynomial");
        if (degree() < d.degree()) return {FpPoly(p_, {}), *this};
        std::vector<u64> r = c_;
        std::vector<u64> q(static_cast<std::size_t>(degree() - d.degree() + 1), 0);
        u64 li = inv(d.lead());
        for (int i = degree(); i >= d.degree(); --i) {
            u64 f = mul(r[static_cast<std::size_t>(i)], li);
            q[static_cast<std::size_t>(i - d.degree())] = f;
            if (f == 0) continue;
            for (int j = 0; j <= d.degree(); ++j) {
                auto idx = static_cast<std::size_t>(i - d.degree() + j);
                r[idx] = sub(r[idx], mul(f, d.c_[static_cast<std::size_t>(j)]));
            }
        }
        r.resize(static_cast<std::size_t>(d.degree()));
        return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
    }

    friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return a.divmod(b).second; }
    friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return a.divmod(b).first; }
    friend bool operator==(const FpPoly&, const FpPoly&) = default;

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    u64 p_;
    std::vector<u64> c_;
};

/// Monic gcd over F_p.
inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod f by square-and-multiply.
inline FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& f) {
    FpPoly result(f.modulus(), {1});
    result = result % f;
    FpPoly b = base % f;
    for (auto i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        result = (result * result) % f;
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = (result * b) % f;
    }
    return result;
}

inline bool fp_is_squarefree(const FpPoly& f) {
    if (f.degree() < 1) return true;
    FpPoly d = f.derivative();
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

/// Ben-Or style test: f is irreducible iff gcd(x^(p^d) - x, f) = 1 for d <= deg f / 2.
inline bool fp_is_irreducible(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw std::domain_error("fp_is_irreducible: degree must be >= 1");
    FpPoly f = f_in.monic();
    if (f.degree() == 1) return true;
    const auto p = from_u64(f.modulus());
    FpPoly x = FpPoly::x(f.modulus());
    FpPoly h = x % f;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = powmod(h, p, f);
        if (gcd(f, h - x).degree() > 0) return false;
    }
    return true;
}

namespace detail {

/// Splits a monic product of distinct linear factors into its roots.
inline void collect_linear_roots(const FpPoly& g, std::vector<std::uint64_t>& roots, std::uint64_t& shift) {
    if (g.degree() == 0) return;
    if (g.degree() == 1) {
        roots.push_back(g.sub(0, g.coeffs()[0]));
        return;
    }
    const auto p = g.modulus();
    if (p == 2) {
        for (std::uint64_t v = 0; v < 2; ++v)
            if (g(v) == 0) roots.push_back(v);
        return;
    }
    const Integer half = from_u64((p - 1) / 2);
    while (true) {
        shift = (shift + 1) % p;
        FpPoly probe(p, {shift, 1});
        FpPoly w = powmod(probe, half, g) - FpPoly(p, {1});
        FpPoly d = gcd(g, w);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            collect_linear_roots(d, roots, shift);
            collect_linear_roots(g / d, roots, shift);
            return;
        }
    }
}

}  // namespace detail

/// All deg(f) roots if f splits into distinct linear factors mod p, else nullopt.
inline std::optional<std::vector<std::uint64_t>> fp_distinct_linear_split(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw std::domain_error("fp_distinct_linear_split: degree must be >= 1");
    FpPoly f = f_in.monic();
    FpPoly x = FpPoly::x(f.modulus());
    FpPoly xp = powmod(x, from_u64(f.modulus()), f);
    FpPoly g = gcd(f, xp - x);
    if (g.degree() != f.degree()) return std::nullopt;
    std::vector<std::uint64_t> roots;
    std::uint64_t shift = 0;
    detail::collect_linear_roots(f, roots, shift);
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Degrees of the irreducible factors (sorted ascending) of a squarefree f.
inline std::vector<int> fp_factor_degrees(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw std::domain_error("fp_factor_degrees: degree must be >= 1");
    if (!fp_is_squarefree(f_in)) throw std::domain_error("fp_factor_degrees: input is not squarefree mod p");
    FpPoly f = f_in.monic();
    const auto p = from_u64(f.modulus());
    FpPoly x = FpPoly::x(f.modulus());
    FpPoly h = x % f;
    std::vector<int> degrees;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = powmod(h, p, f);
        FpPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            for (int k = 0; k < g.degree() / d; ++k) degrees.push_back(d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) degrees.push_back(f.degree());
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace sqfdisc
