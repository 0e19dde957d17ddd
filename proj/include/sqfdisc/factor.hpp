#pragma once

// Integer factorization by trial division followed by Brent's variant of
// Pollard rho, with an explicit work budget. Running out of budget yields
// "indeterminate" instead of a guess.

#include "integer.hpp"
#include "primes.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sqfdisc {

struct FactorBudget {
    std::uint64_t trial_bound = 100'000;
    /// Total rho iterations (polynomial evaluations) allowed per factorize call.
    std::uint64_t rho_iterations = 1u << 22;
};

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing
    PrimalityKind primality = PrimalityKind::deterministic;

    [[nodiscard]] Integer value() const {
        Integer v = sign;
        for (const auto& f : factors) v *= pow(f.prime, f.exponent);
        return v;
    }
    [[nodiscard]] bool squarefree() const {
        return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
    }
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

enum class Verdict { no, yes, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::no: return "false";
        case Verdict::yes: return "true";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace detail {

inline u64 gcd64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

/// One Brent-rho run on odd composite n < 2^64. Returns a nontrivial factor or 0.
inline u64 brent_rho64(u64 n, u64 c, u64 y0, std::uint64_t& budget) {
    constexpr u64 block = 128;
    auto f = [&](u64 v) { return static_cast<u64>((static_cast<u128>(v) * v + c) % n); };
    u64 y = y0, x = y0, ys = y0, q = 1, g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
        x = y;
        if (budget < r) return 0;
        budget -= r;
        for (u64 i = 0; i < r; ++i) y = f(y);
        for (u64 k = 0; k < r && g == 1; k += block) {
            ys = y;
            u64 steps = std::min(block, r - k);
            if (budget < steps) return 0;
            budget -= steps;
            for (u64 i = 0; i < steps; ++i) {
                y = f(y);
                q = mulmod64(q, x > y ? x - y : y - x, n);
            }
            g = gcd64(q, n);
        }
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

inline bool brent_rho(const Integer& n, unsigned long c, unsigned long y0, std::uint64_t& budget, Integer& factor) {
    constexpr std::uint64_t block = 128;
    Integer y = y0, x = y0, ys = y0, q = 1, g = 1, diff;
    auto step = [&](Integer& v) {
        mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
        mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
        x = y;
        if (budget < r) return false;
        budget -= r;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        for (std::uint64_t k = 0; k < r && g == 1; k += block) {
            ys = y;
            std::uint64_t steps = std::min(block, r - k);
            if (budget < steps) return false;
            budget -= steps;
            for (std::uint64_t i = 0; i < steps; ++i) {
                step(y);
                mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) {
        do {
            step(ys);
            mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n || g == 0) return false;
    factor = g;
    return true;
}

/// Splits composite n (no factors below the trial bound) into a proper divisor.
inline std::optional<Integer> split(const Integer& n, std::uint64_t& budget) {
    // perfect powers defeat rho, peel them first
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        Integer root;
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
        }
    }
    for (unsigned long c = 1; budget > 0; ++c) {
        if (fits_u64(n)) {
            u64 f = brent_rho64(to_u64(n), c, 2 + c, budget);
            if (f) return from_u64(f);
        } else {
            Integer f;
            if (brent_rho(n, c, 2 + c, budget, f)) return f;
        }
        if (c > 64) break;
    }
    return std::nullopt;
}

inline bool factor_cofactor(const Integer& n, const FactorBudget& budget_cfg, std::uint64_t& budget,
                            std::map<Integer, unsigned>& out, PrimalityKind& kind) {
    if (n == 1) return true;
    Integer bound = from_u64(budget_cfg.trial_bound);
    if (n <= bound * bound || is_prime(n)) {
        // everything below trial_bound^2 without small factors is prime
        if (primality_kind(n) == PrimalityKind::probabilistic) kind = PrimalityKind::probabilistic;
        out[n] += 1;
        return true;
    }
    auto d = split(n, budget);
    if (!d) return false;
    Integer other = n / *d;
    return factor_cofactor(*d, budget_cfg, budget, out, kind) &&
           factor_cofactor(other, budget_cfg, budget, out, kind);
}

inline void trial_divide(Integer& n, std::uint64_t bound, std::map<Integer, unsigned>& out) {
    auto divide_out = [&](std::uint64_t p) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        out[from_u64(p)] += e;
    };
    const auto& table = small_primes();
    for (std::uint32_t p : table) {
        if (p > bound || n == 1) return;
        if (fits_u64(n) && static_cast<std::uint64_t>(p) * p > to_u64(n)) return;
        divide_out(p);
    }
    for (std::uint64_t p = next_prime(table.back()); p <= bound && n != 1; p = next_prime(p)) divide_out(p);
}

}  // namespace detail

/// Complete factorization of m != 0, or nullopt when the rho budget runs out
/// on a composite cofactor.
inline std::optional<Factorization> factorize(const Integer& m, const FactorBudget& budget = {}) {
    if (m == 0) throw std::domain_error("factorize: zero has no factorization");
    Integer n = abs_value(m);
    std::map<Integer, unsigned> found;
    detail::trial_divide(n, budget.trial_bound, found);
    PrimalityKind kind = PrimalityKind::deterministic;
    std::uint64_t rho_left = budget.rho_iterations;
    if (!detail::factor_cofactor(n, budget, rho_left, found, kind)) return std::nullopt;
    Factorization out;
    out.sign = sign(m) < 0 ? -1 : 1;
    out.primality = kind;
    for (auto& [p, e] : found) out.factors.push_back({p, e});
    return out;
}

/// Product of two factorizations, merging exponents of shared primes.
inline Factorization multiply(const Factorization& a, const Factorization& b) {
    std::map<Integer, unsigned> merged;
    for (const auto& f : a.factors) merged[f.prime] += f.exponent;
    for (const auto& f : b.factors) merged[f.prime] += f.exponent;
    Factorization out;
    out.sign = a.sign * b.sign;
    out.primality = (a.primality == PrimalityKind::probabilistic || b.primality == PrimalityKind::probabilistic)
                        ? PrimalityKind::probabilistic
                        : PrimalityKind::deterministic;
    for (auto& [p, e] : merged) out.factors.push_back({p, e});
    return out;
}

inline Verdict is_squarefree(const Integer& m, const FactorBudget& budget = {}) {
    if (m == 0) throw std::domain_error("is_squarefree: zero is divisible by every square");
    auto f = factorize(m, budget);
    if (!f) return Verdict::indeterminate;
    return f->squarefree() ? Verdict::yes : Verdict::no;
}

}  // namespace sqfdisc
