#pragma once

/**
 * Primality testing and prime enumeration.
 *
 * Below 2^64 the Miller-Rabin test is run against the first twelve primes as
 * bases, which is a proven-deterministic witness set for that range. Above
 * 2^64 we run 64 strong-probable-prime rounds with bases drawn from a fixed
 * splitmix64 stream; a composite survives one round with probability at most
 * 1/4, so the error is below 4^-64 = 2^-128. The bases are fixed so results
 * are reproducible.
 */

#include "integer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sqfdisc {

enum class PrimalityKind { deterministic, probabilistic };

inline constexpr int kProbabilisticRounds = 64;

inline std::string describe(PrimalityKind kind) {
    return kind == PrimalityKind::deterministic
               ? "deterministic Miller-Rabin (n < 2^64)"
               : "probabilistic Miller-Rabin, 64 rounds, error < 2^-128";
}

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod64(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, base, m);
        base = mulmod64(base, base, m);
        e >>= 1;
    }
    return r;
}

inline bool strong_probable_prime64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod64(x, x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

inline bool strong_probable_prime(const Integer& n, const Integer& a) {
    Integer nm1 = n - 1;
    Integer d = nm1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

inline u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace detail

inline constexpr std::uint32_t kSmallPrimeLimit = 1'000'000;

/// Primes up to 10^6, computed once; read-only afterwards.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = detail::sieve_primes(kSmallPrimeLimit);
    return primes;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n % p == 0) return n == p;
    }
    return std::all_of(bases.begin(), bases.end(),
                       [n](std::uint64_t a) { return detail::strong_probable_prime64(n, a); });
}

inline PrimalityKind primality_kind(const Integer& n) {
    return fits_u64(n) ? PrimalityKind::deterministic : PrimalityKind::probabilistic;
}

inline bool is_prime(const Integer& m) {
    if (m < 0) throw std::domain_error("is_prime expects a nonnegative integer");
    if (fits_u64(m)) return is_prime_u64(to_u64(m));
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
    }
    if (!detail::strong_probable_prime(m, Integer(2))) return false;
    detail::u64 state = 0x5eed5eedULL;
    Integer span = m - 3;
    for (int round = 1; round < kProbabilisticRounds; ++round) {
        Integer raw = from_u64(detail::splitmix64(state));
        raw = (raw << 64) + from_u64(detail::splitmix64(state));
        Integer a = mod(raw, span) + 2;
        if (!detail::strong_probable_prime(m, a)) return false;
    }
    return true;
}

/// Smallest prime strictly greater than n.
inline std::uint64_t next_prime(std::uint64_t n) {
    const auto& table = small_primes();
    if (n < table.back()) {
        return *std::upper_bound(table.begin(), table.end(), static_cast<std::uint32_t>(n));
    }
    std::uint64_t c = n + 1;
    while (!is_prime_u64(c)) ++c;
    return c;
}

/// Distinct prime divisors of a small positive integer.
inline std::vector<std::uint64_t> prime_divisors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace sqfdisc
