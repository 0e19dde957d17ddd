#pragma once

#include "integer.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace sqfdisc {

/// x = residue (mod modulus), modulus >= 1, residue reduced into [0, modulus).
struct Congruence {
    Integer residue = 0;
    Integer modulus = 1;

    [[nodiscard]] bool contains(const Integer& x) const { return mod(Integer(x - residue), modulus) == 0; }
    friend bool operator==(const Congruence&, const Congruence&) = default;
};

class InconsistentCongruences : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Merges a system of congruences into one. Overlapping moduli are allowed as
/// long as the residues agree on the overlap.
inline Congruence crt_solve(std::span<const Congruence> system) {
    Congruence acc{0, 1};
    for (const auto& c : system) {
        if (c.modulus < 1) throw std::invalid_argument("crt_solve: modulus must be >= 1");
        Integer r = mod(c.residue, c.modulus);
        Integer g = gcd(acc.modulus, c.modulus);
        Integer diff = r - acc.residue;
        if (mod(diff, g) != 0) {
            throw InconsistentCongruences("crt_solve: " + to_string(r) + " mod " + to_string(c.modulus) +
                                          " contradicts " + to_string(acc.residue) + " mod " +
                                          to_string(acc.modulus));
        }
        // acc.residue + acc.modulus * k = r (mod c.modulus)
        Integer m1 = acc.modulus / g;
        Integer m2 = c.modulus / g;
        Integer k = 0;
        if (m2 > 1) k = mod(Integer((diff / g) * mod_inverse(mod(m1, m2), m2)), m2);
        Integer merged_modulus = acc.modulus * m2;
        acc.residue = mod(Integer(acc.residue + acc.modulus * k), merged_modulus);
        acc.modulus = merged_modulus;
    }
    return acc;
}

inline Congruence crt_solve(std::initializer_list<Congruence> system) {
    return crt_solve(std::span<const Congruence>(system.begin(), system.size()));
}

}  // namespace sqfdisc
