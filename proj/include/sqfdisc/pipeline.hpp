#pragma once

// End-to-end construction: certificate search, parameter assembly, signature
// direction, scaling by q = 1 mod M, and scanning b through the admissible
// class, with every emitted record independently certified.

#include "certify.hpp"
#include "errors.hpp"
#include "paramsearch.hpp"
#include "sieve.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sqfdisc {

struct GenerationTarget {
    int n = 2;
    int r = 0;
    int s = 1;
    PrimeList S;
    std::optional<Integer> N;            // emit only records with |disc| <= N
    std::size_t record_budget = 10;
    std::size_t q_max = 16;              // scales q_0, ..., q_{q_max - 1}
    std::uint64_t scan_budget = 2'000'000;  // b values examined before giving up
    std::uint64_t seed = 1;
    unsigned threads = 1;
    CertifyConfig certify;

    void validate() const {
        if (n < 2) throw InvalidTarget("target: n must be >= 2");
        if (r < 0 || s < 0 || r + 2 * s != n)
            throw InvalidTarget("target: signature (" + std::to_string(r) + "," + std::to_string(s) + ") does not satisfy r + 2s = n");
        normalize_prime_set(S);
        if (record_budget == 0) throw InvalidTarget("target: record budget must be positive");
        if (q_max == 0) throw InvalidTarget("target: q_max must be positive");
    }
};

/// The searches of the construction, done once per target.
struct GenerationPlan {
    ParamCertificate cert;
    SignatureRegion region;
};

inline GenerationPlan plan_generation(const GenerationTarget& target) {
    target.validate();
    CertificateConfig ccfg;
    ccfg.seed = target.seed;
    GenerationPlan plan;
    plan.cert = build_certificate(target.n, target.S, ccfg);
    DirectionSearchConfig dcfg;
    dcfg.seed = target.seed;
    plan.region = find_signature_direction(target.n, target.r, plan.cert, dcfg);
    return plan;
}

/// q_j = 1 + j M with M = n! p1 p2 prod(S).
inline Integer schedule_q(const ParamCertificate& cert, std::size_t j) {
    return 1 + from_u64(j) * cert.assembled_modulus;
}

/// Members of a congruence class inside an open interval, in the order
/// (|b|, b): nonnegative members walk up, negative members walk down.
class ClassScan {
  public:
    ClassScan(const Congruence& cls, const RationalInterval& iv) : cls_(cls), iv_(iv) {
        Integer start_up = 0;
        if (iv.lo && *iv.lo >= 0) start_up = floor(*iv.lo) + 1;
        up_ = first_at_or_above(start_up);
        Integer start_down = -1;
        if (iv.hi && *iv.hi <= 0) start_down = ceil(*iv.hi) - 1;
        down_ = first_at_or_below(start_down);
    }

    /// The next member, or nullopt once both directions have left the interval.
    std::optional<Integer> next() {
        bool up_ok = up_ >= 0 && (!iv_.hi || Rational(up_) < *iv_.hi);
        bool down_ok = down_ < 0 && (!iv_.lo || Rational(down_) > *iv_.lo);
        if (!up_ok && !down_ok) return std::nullopt;
        if (down_ok && (!up_ok || -down_ <= up_)) {
            Integer b = down_;
            down_ -= cls_.modulus;
            return b;
        }
        Integer b = up_;
        up_ += cls_.modulus;
        return b;
    }

    /// Nearest member strictly inside the interval at or above x (or below).
    [[nodiscard]] Integer first_at_or_above(const Integer& x) const { return x + mod(Integer(cls_.residue - x), cls_.modulus); }
    [[nodiscard]] Integer first_at_or_below(const Integer& x) const { return x - mod(Integer(x - cls_.residue), cls_.modulus); }

  private:
    Congruence cls_;
    RationalInterval iv_;
    Integer up_, down_;
};

namespace detail {

/// out[i] = fn(items[i]) computed on up to `threads` workers; the result order
/// never depends on scheduling.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned threads, F fn) -> std::vector<decltype(fn(items[0]))> {
    using R = decltype(fn(items[0]));
    std::vector<std::optional<R>> slots(items.size());
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < items.size(); i += stride) {
            try {
                slots[i] = fn(items[i]);
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<R> out;
    out.reserve(items.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// A record the construction promises: squarefree, coprime to S, irreducible.
/// Non-squarefree values are dropped cheaply before full certification.
inline std::optional<DiscRecord> certify_candidate(const Certifier& cert, const Integer& b) {
    if (cert.obviously_not_squarefree(b)) return std::nullopt;
    return cert.certify(b);
}

}  // namespace detail

struct ScanStats {
    std::uint64_t scanned = 0;
    std::uint64_t emitted = 0;
    std::uint64_t not_squarefree = 0;
    std::uint64_t indeterminate = 0;
    std::uint64_t out_of_bound = 0;  // squarefree but |disc| > N
    std::vector<std::string> log;
};

/// Runs the construction and hands records to `sink` in (q, |b|, b) order
/// until the record budget is met or `sink` returns false. Throws
/// SearchExhausted when the scan budget or the q schedule runs out first.
inline ScanStats generate_stream(const GenerationTarget& target, const std::function<bool(const DiscRecord&)>& sink,
                                 const GenerationPlan* given_plan = nullptr) {
    target.validate();
    GenerationPlan local;
    if (!given_plan) local = plan_generation(target);
    const GenerationPlan& plan = given_plan ? *given_plan : local;

    ScanStats stats;
    const std::size_t batch = 2 * std::max(1u, target.threads);
    for (std::size_t j = 0; j < target.q_max; ++j) {
        Integer q = schedule_q(plan.cert, j);
        FamilyParams params = scale_params(plan.region, plan.cert, q);
        ClassScan scan(params.b_congruence, *params.b_interval);
        Certifier certifier(params, plan.cert.S, target.certify);
        bool any = false;
        for (;;) {
            std::vector<Integer> bs;
            while (bs.size() < batch) {
                auto b = scan.next();
                if (!b) break;
                bs.push_back(std::move(*b));
            }
            if (bs.empty()) break;
            any = true;
            auto results = detail::parallel_map(bs, target.threads, [&](const Integer& b) { return detail::certify_candidate(certifier, b); });
            for (std::size_t i = 0; i < bs.size(); ++i) {
                if (stats.scanned >= target.scan_budget)
                    throw SearchExhausted("scan", "scan budget of " + std::to_string(target.scan_budget) + " b values exhausted after " +
                                                      std::to_string(stats.emitted) + " records");
                ++stats.scanned;
                const auto& rec = results[i];
                if (!rec || rec->squarefree == Verdict::no) {
                    ++stats.not_squarefree;
                    continue;
                }
                if (rec->squarefree == Verdict::indeterminate) {
                    ++stats.indeterminate;
                    continue;
                }
                if (rec->real_roots != target.r)
                    throw CertificationFailure("generate: b = " + to_string(rec->b) + " lies in the signature interval but has " +
                                               std::to_string(rec->real_roots) + " real roots");
                if (!rec->coprime_to_S || !rec->irreducibility_witness)
                    throw CertificationFailure("generate: squarefree record at b = " + to_string(rec->b) +
                                               " is not coprime to S or has no irreducibility witness");
                if (target.N && abs(rec->disc) > *target.N) {
                    ++stats.out_of_bound;
                    continue;
                }
                ++stats.emitted;
                if (!sink(*rec) || stats.emitted >= target.record_budget) return stats;
            }
        }
        if (!any)
            stats.log.push_back("q = " + to_string(q) + ": interval " + to_string(*params.b_interval) +
                                " holds no member of the b class, skipped");
    }
    throw SearchExhausted("scan", "q schedule of " + std::to_string(target.q_max) + " scales exhausted after " +
                                      std::to_string(stats.emitted) + " records");
}

inline std::vector<DiscRecord> generate(const GenerationTarget& target, ScanStats* stats_out = nullptr) {
    std::vector<DiscRecord> out;
    auto stats = generate_stream(target, [&](const DiscRecord& r) {
        out.push_back(r);
        return true;
    });
    if (stats_out) *stats_out = std::move(stats);
    return out;
}

// ---------------------------------------------------------------------------
// Counting and densities

struct CheckpointCount {
    Integer N;
    std::uint64_t distinct = 0;
    friend bool operator==(const CheckpointCount&, const CheckpointCount&) = default;
};

struct RunReport {
    FamilyParams params;  // the q = 1 member of the schedule
    std::uint64_t records_scanned = 0;
    std::uint64_t squarefree_count = 0;
    std::uint64_t indeterminate_count = 0;
    std::uint64_t distinct_discriminants = 0;  // at the largest checkpoint
    std::vector<CheckpointCount> checkpoints;
    Rational empirical_density;
    Rational predicted_lower;
    Rational predicted_upper;
    std::optional<double> exponent_fit;
    bool saturated = true;
    std::vector<std::string> log;
};

/// Unweighted least-squares slope of log(count) against log(N) over the
/// checkpoints with a positive count; needs at least four of them.
inline std::optional<double> fit_exponent(const std::vector<CheckpointCount>& points) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& c : points)
        if (c.distinct > 0) xy.emplace_back(std::log(c.N.get_d()), std::log(static_cast<double>(c.distinct)));
    if (xy.size() < 4) return std::nullopt;
    double mx = 0, my = 0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : xy) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0) return std::nullopt;
    return sxy / sxx;
}

namespace detail {

/// Members b of the class inside the open interval with |Delta(b)| <= N.
/// The interval is a cell between consecutive roots of Delta (or unbounded
/// past the extreme one), and log|Delta| is concave there, so the set is an
/// initial run from each finite end.
inline std::vector<Integer> small_discriminant_members(const LinearFactorSystem& sys, const Congruence& cls, const RationalInterval& iv,
                                                       const Integer& N, std::uint64_t budget, bool& saturated) {
    ClassScan helper(cls, iv);
    std::vector<Integer> out;
    auto inside = [&](const Integer& b) { return iv.contains(Rational(b)); };
    auto small = [&](const Integer& b) { return abs(sys.evaluate(b)) <= N; };
    std::optional<Integer> left_stop;
    if (iv.lo) {
        Integer b = helper.first_at_or_above(floor(*iv.lo) + 1);
        for (; inside(b) && small(b); b += cls.modulus) {
            if (out.size() >= budget) {
                saturated = false;
                return out;
            }
            out.push_back(b);
        }
        left_stop = b;
    }
    if (iv.hi) {
        Integer b = helper.first_at_or_below(ceil(*iv.hi) - 1);
        for (; inside(b) && small(b) && (!left_stop || b >= *left_stop); b -= cls.modulus) {
            if (out.size() >= budget) {
                saturated = false;
                return out;
            }
            out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Rational binomial_fraction(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? Rational(0) : make_rational(from_u64(num), from_u64(den));
}

}  // namespace detail

struct CountConfig {
    std::uint64_t cutoff = 1000;  // sieve cutoff for the predicted density
};

/// Distinct certified squarefree discriminants with |Delta| <= N for each
/// checkpoint N, over the q schedule of the target.
inline RunReport count_distinct_discriminants(const GenerationTarget& target, std::vector<Integer> checkpoints,
                                              const CountConfig& cfg = {}) {
    target.validate();
    if (checkpoints.empty()) throw std::invalid_argument("count: need at least one checkpoint");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("count: checkpoints must increase");
    const Integer& top = checkpoints.back();

    GenerationPlan plan = plan_generation(target);
    RunReport report;
    report.params = scale_params(plan.region, plan.cert, Integer(1));
    std::map<Integer, bool> squarefree_values;  // every certified squarefree Delta, by value
    std::uint64_t remaining = target.scan_budget;
    for (std::size_t j = 0; j < target.q_max; ++j) {
        Integer q = schedule_q(plan.cert, j);
        FamilyParams params = scale_params(plan.region, plan.cert, q);
        Certifier certifier(params, plan.cert.S, target.certify);
        auto bs = detail::small_discriminant_members(certifier.system(), params.b_congruence, *params.b_interval, top, remaining,
                                                     report.saturated);
        remaining -= bs.size();
        auto recs = detail::parallel_map(bs, target.threads, [&](const Integer& b) { return detail::certify_candidate(certifier, b); });
        // a degree n-1 polynomial in b takes each value at most n-1 times
        std::map<Integer, int> multiplicity;
        for (const auto& b : bs)
            if (++multiplicity[certifier.system().evaluate(b)] > target.n - 1)
                throw CertificationFailure("count: a discriminant value repeats more than n-1 times");
        std::uint64_t family_squarefree = 0;
        std::map<Integer, bool> family_values;
        for (const auto& rec : recs) {
            ++report.records_scanned;
            if (!rec) continue;
            if (rec->squarefree == Verdict::indeterminate) {
                ++report.indeterminate_count;
                continue;
            }
            if (!rec->certified()) continue;
            if (rec->real_roots != target.r) throw CertificationFailure("count: record outside the target signature");
            ++family_squarefree;
            family_values[rec->disc] = true;
            squarefree_values[rec->disc] = true;
        }
        // within one family; different q may well produce the same values
        if (family_values.size() * static_cast<std::uint64_t>(target.n - 1) < family_squarefree)
            throw CertificationFailure("count: fewer distinct discriminants than the multiplicity bound allows");
        report.squarefree_count += family_squarefree;
        report.log.push_back("q = " + to_string(q) + ": " + std::to_string(bs.size()) + " b values with |disc| <= " + to_string(top));
        if (!report.saturated) break;
    }
    for (const auto& N : checkpoints) {
        std::uint64_t c = 0;
        for (const auto& [d, _] : squarefree_values)
            if (abs(d) <= N) ++c;
        report.checkpoints.push_back({N, c});
    }
    report.distinct_discriminants = report.checkpoints.back().distinct;
    report.empirical_density = detail::binomial_fraction(report.squarefree_count, report.records_scanned - report.indeterminate_count);
    auto sys = disc_linear_factorization(report.params.n, report.params.a)
                   .substitute(report.params.b_congruence.modulus, report.params.b_congruence.residue);
    auto prof = build_profile(sys, cfg.cutoff);
    report.predicted_lower = prof.product_lower;
    report.predicted_upper = prof.product_upper;
    report.exponent_fit = fit_exponent(report.checkpoints);
    return report;
}

struct DensityReport {
    std::uint64_t scanned = 0;
    std::uint64_t squarefree = 0;
    std::uint64_t indeterminate = 0;
    Rational empirical;
    double sigma = 0;  // binomial standard error of the empirical fraction
    SieveProfile profile;

    /// empirical within [lower - 3 sigma, upper + 3 sigma]
    [[nodiscard]] bool consistent(double width = 3.0) const {
        double f = to_double(empirical);
        return f >= to_double(profile.product_lower) - width * sigma && f <= to_double(profile.product_upper) + width * sigma;
    }
};

/// Squarefree fraction of Delta over the first scan_length admissible b (in
/// scan order), against the truncated density product for the system in the
/// free variable u, b = t u + r.
inline DensityReport density_report(const FamilyParams& params, std::span<const std::uint64_t> S, std::uint64_t scan_length,
                                    std::uint64_t cutoff = 1000, unsigned threads = 1, const FactorBudget& budget = {}) {
    params.validate();
    CertifyConfig cc;
    cc.budget = budget;
    cc.sn_evidence = false;
    Certifier certifier(params, S, cc);
    DensityReport out;
    ClassScan scan(params.b_congruence, params.b_interval.value_or(RationalInterval{}));
    std::vector<Integer> bs;
    while (bs.size() < scan_length) {
        auto b = scan.next();
        if (!b) break;
        bs.push_back(std::move(*b));
    }
    auto verdicts = detail::parallel_map(bs, threads, [&](const Integer& b) -> Verdict {
        if (certifier.obviously_not_squarefree(b)) return Verdict::no;
        Verdict v = Verdict::yes;
        for (const auto& f : certifier.system().factors) {
            Verdict part = is_squarefree(f(b), budget);
            if (part == Verdict::no) return Verdict::no;
            if (part == Verdict::indeterminate) v = Verdict::indeterminate;
        }
        return v;
    });
    for (auto v : verdicts) {
        ++out.scanned;
        if (v == Verdict::indeterminate) ++out.indeterminate;
        if (v == Verdict::yes) ++out.squarefree;
    }
    std::uint64_t valid = out.scanned - out.indeterminate;
    out.empirical = detail::binomial_fraction(out.squarefree, valid);
    double f = to_double(out.empirical);
    out.sigma = valid ? std::sqrt(f * (1 - f) / static_cast<double>(valid)) : 0.0;
    auto sys = certifier.system().substitute(params.b_congruence.modulus, params.b_congruence.residue);
    out.profile = build_profile(sys, cutoff);
    return out;
}

}  // namespace sqfdisc
