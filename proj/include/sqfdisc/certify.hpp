#pragma once

// Independent certification of one output polynomial: discriminant recomputed
// by subresultants and cross-checked against the linear-factor product,
// factored to decide squarefreeness, real roots by Sturm, irreducibility by a
// finite-field witness, and Frobenius cycle types as S_n evidence.

#include "errors.hpp"
#include "factor.hpp"
#include "family.hpp"
#include "fp_poly.hpp"
#include "primes.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqfdisc {

using CycleType = std::vector<int>;  // sorted descending

/// Which permutation-group facts were witnessed. Transitivity comes from the
/// irreducibility prime; a prime cycle of length > n/2 makes the group
/// primitive; a type with a single 2-cycle and otherwise odd cycles powers to a
/// transposition. Primitive + transposition forces S_n.
struct SnCertificate {
    std::string criterion;
    std::uint64_t transitive_prime = 0;
    std::uint64_t primitive_prime = 0;     // 0 when not needed (n = 2)
    std::uint64_t transposition_prime = 0; // 0 when not needed (n = 2)
    friend bool operator==(const SnCertificate&, const SnCertificate&) = default;
};

struct SnReport {
    std::uint64_t sampled_primes = 0;
    std::map<CycleType, std::uint64_t> cycle_types;
    std::optional<SnCertificate> certificate;
    friend bool operator==(const SnReport&, const SnReport&) = default;
};

struct DiscRecord {
    int n = 0;
    Integer q = 1;
    Integer b;
    IntPoly poly;
    Integer disc;
    std::optional<Factorization> disc_factorization;  // nullopt: indeterminate, or disc = 0
    Verdict squarefree = Verdict::indeterminate;
    bool coprime_to_S = false;
    int real_roots = 0;
    std::optional<std::uint64_t> irreducibility_witness;
    SnReport sn;
    PrimalityKind primality = PrimalityKind::deterministic;

    /// Squarefree, coprime to S and provably irreducible.
    [[nodiscard]] bool certified() const {
        return squarefree == Verdict::yes && coprime_to_S && irreducibility_witness.has_value();
    }
    friend bool operator==(const DiscRecord&, const DiscRecord&) = default;
};

struct CertifyConfig {
    FactorBudget budget;
    std::uint64_t witness_budget = 2000;  // irreducibility witnesses are searched among primes below this
    std::uint64_t sn_prime_budget = 400;  // Frobenius types are sampled at primes below this
    bool sn_evidence = true;
};

/// First prime p < witness_budget, p not dividing the discriminant, with poly
/// irreducible mod p. A witness proves irreducibility over Q; nullopt proves
/// nothing.
inline std::optional<std::uint64_t> irreducible_over_Q(const IntPoly& poly, std::uint64_t witness_budget,
                                                        const std::optional<Integer>& disc = std::nullopt) {
    if (poly.degree() < 1 || poly.lead() != 1) throw std::invalid_argument("irreducible_over_Q: need a monic non-constant polynomial");
    if (poly.degree() == 1) return 2;
    Integer d = disc ? *disc : discriminant(poly);
    if (d == 0) return std::nullopt;
    for (std::uint64_t p = 2; p < witness_budget; p = next_prime(p)) {
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) continue;
        if (fp_is_irreducible(FpPoly::from(poly, p))) return p;
    }
    return std::nullopt;
}

namespace detail {

inline bool has_prime_part_above_half(const CycleType& t, int n) {
    return std::any_of(t.begin(), t.end(), [n](int c) { return 2 * c > n && is_prime_u64(static_cast<std::uint64_t>(c)); });
}

inline bool powers_to_transposition(const CycleType& t) {
    int twos = 0;
    for (int c : t) {
        if (c == 2) ++twos;
        else if (c % 2 == 0) return false;
    }
    return twos == 1;
}

}  // namespace detail

/// Factor-degree patterns of poly modulo every prime below prime_budget that
/// does not divide the discriminant, and an S_n certificate when the sampled
/// types allow one.
inline SnReport sn_evidence(const IntPoly& poly, std::uint64_t prime_budget, const std::optional<Integer>& disc_in = std::nullopt,
                            std::optional<std::uint64_t> witness = std::nullopt) {
    const int n = poly.degree();
    Integer disc = disc_in ? *disc_in : discriminant(poly);
    if (disc == 0) throw std::invalid_argument("sn_evidence: polynomial has a repeated root");
    if (!witness) witness = irreducible_over_Q(poly, std::max<std::uint64_t>(prime_budget, 2000), disc);
    if (!witness) throw std::invalid_argument("sn_evidence: no irreducibility witness; input must be irreducible");

    SnReport out;
    std::uint64_t primitive = 0, transposition = 0;
    for (std::uint64_t p = 2; p < prime_budget; p = next_prime(p)) {
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        CycleType t = fp_factor_degrees(FpPoly::from(poly, p));
        std::sort(t.begin(), t.end(), std::greater<>());
        ++out.sampled_primes;
        ++out.cycle_types[t];
        if (!primitive && detail::has_prime_part_above_half(t, n)) primitive = p;
        if (!transposition && detail::powers_to_transposition(t)) transposition = p;
    }
    if (n == 2) {
        out.certificate = SnCertificate{"degree 2: transitive", *witness, 0, 0};
    } else if (primitive && transposition) {
        out.certificate = SnCertificate{"transitive + prime cycle > n/2 (primitive) + transposition", *witness, primitive, transposition};
    }
    return out;
}

namespace detail {

inline Factorization unit_factorization(const Integer& v) {
    Factorization f;
    f.sign = sgn(v) < 0 ? -1 : 1;
    return f;
}

}  // namespace detail

/// Certifies members P_{a,b} of one family. The linear-factor system is
/// computed once; every record still recomputes its discriminant directly.
class Certifier {
  public:
    Certifier(FamilyParams params, std::span<const std::uint64_t> S, CertifyConfig cfg = {})
        : params_(std::move(params)), S_(S.begin(), S.end()), cfg_(std::move(cfg)) {
        params_.validate();
        system_ = disc_linear_factorization(params_.n, params_.a);
        for (auto p : S_) S_product_ *= from_u64(p);
    }

    [[nodiscard]] const FamilyParams& params() const { return params_; }
    [[nodiscard]] const LinearFactorSystem& system() const { return system_; }

    /// Cheap rejection: some square of a small prime, or a prime shared by two
    /// linear factors, divides the discriminant. Never rejects a squarefree value.
    [[nodiscard]] bool obviously_not_squarefree(const Integer& b) const {
        std::vector<Integer> vals;
        for (const auto& f : system_.factors) vals.push_back(f(b));
        for (const auto& v : vals)
            if (v == 0) return true;
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                if (gcd(vals[i], vals[j]) != 1) return true;
        for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
            const unsigned long sq = static_cast<unsigned long>(p) * p;
            for (const auto& v : vals)
                if (mpz_divisible_ui_p(v.get_mpz_t(), sq)) return true;
        }
        return false;
    }

    [[nodiscard]] DiscRecord certify(const Integer& b) const {
        if (!params_.admits(b)) throw std::invalid_argument("certify_record: b = " + to_string(b) + " is outside the admissible class");
        DiscRecord rec;
        rec.n = params_.n;
        rec.q = params_.q;
        rec.b = b;
        rec.poly = build_integer_P(params_.n, params_.a, b);
        rec.disc = discriminant(rec.poly);
        if (system_.evaluate(b) != rec.disc)
            throw CertificationFailure("certify_record: product formula disagrees with the subresultant discriminant at b = " + to_string(b));
        fill(rec);
        return rec;
    }

    /// Everything except the family cross-check; for externally supplied
    /// polynomials.
    static DiscRecord certify_polynomial(const IntPoly& poly, std::span<const std::uint64_t> S, const CertifyConfig& cfg = {}) {
        if (poly.degree() < 2 || poly.lead() != 1) throw std::invalid_argument("certify: need a monic polynomial of degree >= 2");
        DiscRecord rec;
        rec.n = poly.degree();
        rec.b = poly.coeff(0);
        rec.poly = poly;
        rec.disc = discriminant(poly);
        Integer prod = 1;
        for (auto p : S) prod *= from_u64(p);
        if (rec.disc != 0) rec.disc_factorization = factorize(rec.disc, cfg.budget);
        finish(rec, prod, cfg);
        return rec;
    }

  private:
    void fill(DiscRecord& rec) const {
        if (rec.disc != 0) {
            // factor the linear values one at a time; each is a fraction of the size
            Factorization acc = detail::unit_factorization(Integer(system_.sign));
            bool complete = true;
            for (const auto& f : system_.factors) {
                auto part = factorize(f(rec.b), cfg_.budget);
                if (!part) {
                    complete = false;
                    break;
                }
                acc = multiply(acc, *part);
            }
            if (complete) {
                if (acc.value() != rec.disc) throw CertificationFailure("certify_record: merged factorization does not reproduce the discriminant");
                rec.disc_factorization = std::move(acc);
            }
        }
        finish(rec, S_product_, cfg_);
    }

    static void finish(DiscRecord& rec, const Integer& S_product, const CertifyConfig& cfg) {
        if (rec.disc == 0) {
            rec.squarefree = Verdict::no;
        } else if (rec.disc_factorization) {
            rec.squarefree = rec.disc_factorization->squarefree() ? Verdict::yes : Verdict::no;
            rec.primality = rec.disc_factorization->primality;
        } else {
            rec.squarefree = Verdict::indeterminate;
        }
        rec.coprime_to_S = rec.disc != 0 && gcd(rec.disc, S_product) == 1;
        rec.real_roots = real_root_count(rec.poly);
        if (rec.disc != 0 && (rec.n - rec.real_roots) % 2 != 0)
            throw CertificationFailure("certify_record: real-root count has the wrong parity");
        if (rec.disc != 0) {
            rec.irreducibility_witness = irreducible_over_Q(rec.poly, cfg.witness_budget, rec.disc);
            if (cfg.sn_evidence && rec.irreducibility_witness)
                rec.sn = sn_evidence(rec.poly, cfg.sn_prime_budget, rec.disc, rec.irreducibility_witness);
        }
    }

    FamilyParams params_;
    std::vector<std::uint64_t> S_;
    CertifyConfig cfg_;
    LinearFactorSystem system_;
    Integer S_product_ = 1;
};

inline DiscRecord certify_record(const FamilyParams& params, const Integer& b, std::span<const std::uint64_t> S = {},
                                 const CertifyConfig& cfg = {}) {
    return Certifier(params, S, cfg).certify(b);
}

}  // namespace sqfdisc
