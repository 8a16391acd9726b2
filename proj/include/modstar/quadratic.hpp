#pragma once

#include <vector>

#include "modstar/congruence.hpp"

namespace modstar {

// Closed-form square roots exist on three "levels" depending on the 2-adic
// shape of phi(n): level 1 for odd prime powers with phi/2 odd, levels 2 and 3
// for odd prime powers or cyclic semiprimes with phi/4 resp. phi/8 odd.

namespace detail {

struct LevelShape {
    bool prime_power{};
    bool cyclic_semiprime{};
    u64 phi{};
};

inline LevelShape level_shape(u64 n) {
    check_modulus(n);
    if (n % 2 == 0)
        return {false, false, 0};
    auto f = factorize(n);
    LevelShape s;
    s.phi = euler_phi(n);
    s.prime_power = f.distinct_primes() == 1;
    s.cyclic_semiprime =
        f.distinct_primes() == 2 &&
        std::gcd(phi_prime_power(f.factors[0].first, f.factors[0].second),
                 phi_prime_power(f.factors[1].first, f.factors[1].second)) == 2;
    return s;
}

} // namespace detail

/// Highest closed-form level applicable to n, or 0 if none.
inline int applicable_level(u64 n) {
    auto s = detail::level_shape(n);
    if (!s.prime_power && !s.cyclic_semiprime)
        return 0;
    if (s.prime_power && s.phi % 4 == 2)
        return 1;
    if (s.phi % 8 == 4)
        return 2;
    if (s.phi % 16 == 8)
        return 3;
    return 0;
}

/// True iff some x satisfies x^2 == b in the star group. Uses the group
/// structure for cyclic moduli and bounded exhaustion otherwise.
inline bool is_qr_star(const ModStarResidue& b) {
    u64 n = b.modulus;
    if (n % 2 == 1 && classify(n).cyclic) {
        u64 m = group_order(n);
        if (m % 2 == 1)
            return true;
        u64 x = pow_mod(b.repr, m / 2, n);
        return x == 1 || x == n - 1;
    }
    if (n > 1'000'000)
        throw limit_error("is_qr_star: exhaustive search restricted to n <= 1e6");
    for (const auto& x : group_elements(n))
        if (mul_star(x, x) == b)
            return true;
    return false;
}

/// True iff b is a fourth power in the star group.
inline bool is_biquadratic_star(const ModStarResidue& b) {
    u64 n = b.modulus;
    if (n % 2 == 1 && classify(n).cyclic) {
        u64 m = group_order(n);
        u64 g = std::gcd<u64>(4, m);
        u64 x = pow_mod(b.repr, m / g, n);
        return x == 1 || x == n - 1;
    }
    if (n > 1'000'000)
        throw limit_error("is_biquadratic_star: exhaustive search restricted to n <= 1e6");
    for (const auto& x : group_elements(n)) {
        auto x2 = mul_star(x, x);
        if (mul_star(x2, x2) == b)
            return true;
    }
    return false;
}

namespace detail {

inline ModStarResidue checked_root(const ModStarResidue& b, u64 exponent) {
    auto x = pow_star(b, exponent);
    if (mul_star(x, x) != b)
        throw internal_error("closed-form root failed verification");
    return x;
}

} // namespace detail

/// Level 1: n an odd prime power with phi(n)/2 odd. Every element is a
/// quadratic residue and x = b^((phi/2+1)/2) is its unique root.
inline ModStarResidue sqrt_level1(const ModStarResidue& b) {
    auto s = detail::level_shape(b.modulus);
    if (!(s.prime_power && s.phi % 4 == 2))
        throw level_inapplicable_error("sqrt_level1: requires an odd prime power with phi/2 odd");
    return detail::checked_root(b, (s.phi / 2 + 1) / 2);
}

/// Level 2: odd prime power or cyclic semiprime with phi(n)/4 odd;
/// b must be a quadratic residue.
inline ModStarResidue sqrt_level2(const ModStarResidue& b) {
    auto s = detail::level_shape(b.modulus);
    if (!((s.prime_power || s.cyclic_semiprime) && s.phi % 8 == 4))
        throw level_inapplicable_error("sqrt_level2: requires phi/4 odd on a prime power or cyclic semiprime");
    if (!is_qr_star(b))
        throw non_residue_error("sqrt_level2: b is not a quadratic residue");
    return detail::checked_root(b, (s.phi / 4 + 1) / 2);
}

/// Level 3: odd prime power or cyclic semiprime with phi(n)/8 odd;
/// b must be a biquadratic residue.
inline ModStarResidue sqrt_level3(const ModStarResidue& b) {
    auto s = detail::level_shape(b.modulus);
    if (!((s.prime_power || s.cyclic_semiprime) && s.phi % 16 == 8))
        throw level_inapplicable_error("sqrt_level3: requires phi/8 odd on a prime power or cyclic semiprime");
    if (!is_biquadratic_star(b))
        throw non_residue_error("sqrt_level3: b is not a biquadratic residue");
    return detail::checked_root(b, (s.phi / 8 + 1) / 2);
}

struct ResiduePartition {
    u64 n{};
    int level{};
    // level 1: {all}; level 2: {squares, non-squares};
    // level 3: {fourth powers, other squares, non-squares}
    std::vector<std::vector<ModStarResidue>> classes;
};

inline ResiduePartition partition(u64 n, int level) {
    auto s = detail::level_shape(n);
    bool ok = (level == 1 && s.prime_power && s.phi % 4 == 2) ||
              (level == 2 && (s.prime_power || s.cyclic_semiprime) && s.phi % 8 == 4) ||
              (level == 3 && (s.prime_power || s.cyclic_semiprime) && s.phi % 16 == 8);
    if (!ok)
        throw level_inapplicable_error("partition: level not applicable to this modulus");

    auto elements = group_elements(n);
    ResiduePartition part;
    part.n = n;
    part.level = level;
    if (level == 1) {
        part.classes.push_back(elements);
        return part;
    }
    std::vector<ModStarResidue> squares, fourths;
    for (const auto& x : elements) {
        auto x2 = mul_star(x, x);
        squares.push_back(x2);
        if (level == 3)
            fourths.push_back(mul_star(x2, x2));
    }
    auto dedup = [](std::vector<ModStarResidue>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(squares);
    if (level == 2) {
        std::vector<ModStarResidue> coset;
        std::set_difference(elements.begin(), elements.end(), squares.begin(), squares.end(),
                            std::back_inserter(coset));
        part.classes.push_back(std::move(squares));
        part.classes.push_back(std::move(coset));
        return part;
    }
    dedup(fourths);
    std::vector<ModStarResidue> coset, cocoset;
    std::set_difference(squares.begin(), squares.end(), fourths.begin(), fourths.end(),
                        std::back_inserter(coset));
    std::set_difference(elements.begin(), elements.end(), squares.begin(), squares.end(),
                        std::back_inserter(cocoset));
    part.classes.push_back(std::move(fourths));
    part.classes.push_back(std::move(coset));
    part.classes.push_back(std::move(cocoset));
    return part;
}

/// Every x with x^2 == b in the star group, by exhaustive search. Test oracle
/// for the closed-form levels; intentionally simple.
inline std::vector<ModStarResidue> brute_sqrt_oracle(const ModStarResidue& b) {
    if (b.modulus > 1'000'000)
        throw limit_error("brute_sqrt_oracle: restricted to n <= 1e6");
    std::vector<ModStarResidue> roots;
    for (const auto& x : group_elements(b.modulus))
        if (mul_star(x, x) == b)
            roots.push_back(x);
    return roots;
}

} // namespace modstar
