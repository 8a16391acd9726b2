#pragma once

#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "modstar/arith.hpp"
#include "modstar/errors.hpp"

namespace modstar {

// The star congruence identifies a with both b and -b modulo n, so each
// class {a, n-a} of units collapses to one residue. For odd n the canonical
// representative is the odd member of the pair; for even n (where both
// members are odd) it is the member below n/2.

struct ModStarResidue {
    u64 modulus{};
    u64 repr{};

    auto operator<=>(const ModStarResidue&) const = default;
};

namespace detail {

/// Canonicalize r in [0, n) into the star representative.
inline u64 canonical_value(u64 r, u64 n) {
    if (n % 2 == 1)
        return (r % 2 == 1) ? r : n - r;
    return (r < n - r) ? r : n - r;
}

inline void check_modulus(u64 n) {
    if (n < 3)
        throw modulus_error("modulus must be >= 3");
}

inline u64 reduce_coprime(i64 a, u64 n) {
    i64 m = static_cast<i64>(n);
    u64 r = static_cast<u64>(((a % m) + m) % m);
    if (std::gcd(r, n) != 1)
        throw coprimality_error("value is not coprime to the modulus");
    return r;
}

} // namespace detail

inline ModStarResidue canonical_repr(i64 a, u64 n) {
    detail::check_modulus(n);
    u64 r = detail::reduce_coprime(a, n);
    return {n, detail::canonical_value(r, n)};
}

/// True iff n | (a-b) or n | (a+b). Both arguments must be coprime to n.
inline bool congruent_star(i64 a, i64 b, u64 n) {
    detail::check_modulus(n);
    u64 ra = detail::reduce_coprime(a, n);
    u64 rb = detail::reduce_coprime(b, n);
    return ra == rb || ra + rb == n;
}

inline ModStarResidue mul_star(const ModStarResidue& a, const ModStarResidue& b) {
    if (a.modulus != b.modulus)
        throw modulus_mismatch_error("mul_star: operands have different moduli");
    u64 n = a.modulus;
    return {n, detail::canonical_value(mul_mod(a.repr, b.repr, n), n)};
}

inline ModStarResidue pow_star(const ModStarResidue& a, u64 e) {
    u64 n = a.modulus;
    return {n, detail::canonical_value(pow_mod(a.repr, e, n), n)};
}

/// All canonical representatives, ascending. Size is phi(n)/2.
inline std::vector<ModStarResidue> group_elements(u64 n) {
    detail::check_modulus(n);
    std::vector<ModStarResidue> out;
    if (n % 2 == 1) {
        for (u64 a = 1; a < n; a += 2)
            if (std::gcd(a, n) == 1)
                out.push_back({n, a});
    } else {
        for (u64 a = 1; 2 * a < n; ++a)
            if (std::gcd(a, n) == 1)
                out.push_back({n, a});
    }
    return out;
}

inline u64 group_order(u64 n) {
    detail::check_modulus(n);
    return euler_phi(n) / 2;
}

/// Least t >= 1 with a^t == +-1 (mod n), computed by descending from a known
/// multiple of the order through its prime factors. `exponent_multiple` must
/// satisfy a^exponent_multiple == +-1 (mod n); carmichael_lambda(n) always does.
inline u64 star_order_from(u64 a, u64 n, u64 exponent_multiple, const std::vector<u64>& primes) {
    u64 t = exponent_multiple;
    for (u64 q : primes) {
        while (t % q == 0) {
            u64 x = pow_mod(a, t / q, n);
            if (x == 1 || x == n - 1)
                t /= q;
            else
                break;
        }
    }
    return t;
}

inline u64 element_order(const ModStarResidue& a) {
    u64 n = a.modulus;
    u64 lambda = carmichael_lambda(n);
    return star_order_from(a.repr, n, lambda, factorize(lambda).primes());
}

/// True iff the order of a in the star group mod n equals m. Requires that
/// every element order divides m (m must be a multiple of the group exponent).
inline bool is_generator_star(u64 a, u64 n, u64 m, const std::vector<u64>& m_primes) {
    for (u64 q : m_primes) {
        u64 x = pow_mod(a, m / q, n);
        if (x == 1 || x == n - 1)
            return false;
    }
    return true;
}

/// phi(n)/lambda(n) for odd n >= 3 (OEIS A034380). Equals 1 exactly for
/// prime powers; for n = p^a q^b it equals gcd(phi(p^a), phi(q^b)).
inline u64 j_invariant(u64 n) {
    detail::check_modulus(n);
    if (n % 2 == 0)
        throw modulus_error("j_invariant: modulus must be odd");
    return euler_phi(n) / carmichael_lambda(n);
}

struct GroupStarSummary {
    u64 n{};
    u64 order{};
    u64 j{};
    u64 lambda{};
    bool cyclic{};
    bool cyclic_semiprime{};
    u64 primitive_root_count{};
    std::optional<u64> smallest_primitive_root{};
};

namespace detail {

inline u64 phi_prime_power(u64 p, unsigned e) {
    u64 v = p - 1;
    for (unsigned i = 1; i < e; ++i)
        v *= p;
    return v;
}

} // namespace detail

/// Structure of the star group for odd n: order, j, lambda, cyclicity and
/// primitive-root data. Even moduli are not classified; use even_reduction.
inline GroupStarSummary classify(u64 n) {
    detail::check_modulus(n);
    if (n % 2 == 0)
        throw modulus_error("classify: defined for odd moduli only");
    auto f = factorize(n);
    u64 phi = euler_phi(n);
    u64 lambda = carmichael_lambda(n);

    GroupStarSummary s;
    s.n = n;
    s.order = phi / 2;
    s.lambda = lambda;
    s.j = phi / lambda;
    s.cyclic = s.j <= 2;
    s.cyclic_semiprime =
        f.distinct_primes() == 2 &&
        std::gcd(detail::phi_prime_power(f.factors[0].first, f.factors[0].second),
                 detail::phi_prime_power(f.factors[1].first, f.factors[1].second)) == 2;
    if (s.cyclic) {
        s.primitive_root_count = euler_phi(s.order);
        std::vector<u64> qs;
        if (s.order > 1)
            qs = factorize(s.order).primes();
        for (u64 a = 1; a < n; a += 2) {
            if (std::gcd(a, n) != 1)
                continue;
            if (is_generator_star(a, n, s.order, qs)) {
                s.smallest_primitive_root = a;
                break;
            }
        }
    }
    return s;
}

/// All generators of a cyclic star group, ascending.
inline std::vector<ModStarResidue> primitive_roots_star(u64 n) {
    auto s = classify(n);
    if (!s.cyclic)
        throw non_cyclic_modulus_error("primitive_roots_star: group is not cyclic");
    auto qs = s.order == 1 ? std::vector<u64>{} : factorize(s.order).primes();
    std::vector<ModStarResidue> roots;
    for (const auto& e : group_elements(n))
        if (is_generator_star(e.repr, n, s.order, qs))
            roots.push_back(e);
    return roots;
}

/// For odd n = p^a q^b, the pair (j, lambda) with G_n isomorphic to C_j x C_lambda.
inline std::pair<u64, u64> decomposition_two_factors(u64 n) {
    detail::check_modulus(n);
    if (n % 2 == 0 || factorize(n).distinct_primes() != 2)
        throw wrong_shape_error("decomposition_two_factors: n must be odd with exactly two prime factors");
    u64 lambda = carmichael_lambda(n);
    return {euler_phi(n) / lambda, lambda};
}

/// For n = p1^a1 p2^a2 with j(n) = 2 p1^k (1 <= k < a1), the smaller modulus
/// m = p1^(a1-k) p2^a2 whose star group is cyclic of order lambda(n).
/// Returns nullopt when the hypothesis fails or when the candidate modulus
/// does not actually yield a cyclic group of that order.
inline std::optional<u64> unique_cyclic_submodulus(u64 n) {
    detail::check_modulus(n);
    if (n % 2 == 0)
        throw modulus_error("unique_cyclic_submodulus: modulus must be odd");
    auto f = factorize(n);
    if (f.distinct_primes() != 2)
        return std::nullopt;
    u64 p1 = f.factors[0].first;
    unsigned a1 = f.factors[0].second;
    u64 j = j_invariant(n);
    if (j % 2 != 0)
        return std::nullopt;
    u64 h = j / 2;
    unsigned k = 0;
    while (h % p1 == 0) {
        h /= p1;
        ++k;
    }
    if (h != 1 || k == 0 || k >= a1)
        return std::nullopt;
    u64 m = f.factors[1].first;
    for (unsigned i = 1; i < f.factors[1].second; ++i)
        m *= f.factors[1].first;
    for (unsigned i = 0; i < a1 - k; ++i)
        m *= p1;
    if (!classify(m).cyclic || group_order(m) != carmichael_lambda(n))
        return std::nullopt;
    return m;
}

/// The star group mod 2m is isomorphic to the one mod m for odd m, so moduli
/// n == 2 (mod 4) reduce to n/2. Other even n have no reduction here.
inline std::optional<u64> even_reduction(u64 n) {
    detail::check_modulus(n);
    if (n % 4 == 2 && n / 2 >= 3)
        return n / 2;
    return std::nullopt;
}

struct Rational {
    u64 num{};
    u64 den{};
};

/// Ratio of generalized primitive roots mod n (elements of order lambda(n))
/// to star classes of that same order, counted exhaustively. den == 0 means
/// no star class reaches order lambda(n), which happens e.g. for prime powers.
inline Rational generalized_pr_ratio(u64 n) {
    detail::check_modulus(n);
    if (is_prime(n))
        throw precondition_error("generalized_pr_ratio: n must be composite");
    if (n > 100000)
        throw limit_error("generalized_pr_ratio: exhaustive count restricted to n <= 1e5");
    u64 lambda = carmichael_lambda(n);
    if (lambda < 2)
        throw precondition_error("generalized_pr_ratio: lambda(n) must be >= 2");
    auto qs = factorize(lambda).primes();

    u64 count_mod = 0;
    u64 count_star = 0;
    for (u64 a = 1; a < n; ++a) {
        if (std::gcd(a, n) != 1)
            continue;
        u64 d = lambda;
        for (u64 q : qs)
            while (d % q == 0 && pow_mod(a, d / q, n) == 1)
                d /= q;
        if (d == lambda)
            ++count_mod;
        // star order: halve when a^(d/2) == -1
        u64 ds = (d % 2 == 0 && pow_mod(a, d / 2, n) == n - 1) ? d / 2 : d;
        if (ds == lambda && detail::canonical_value(a % n, n) == a % n)
            ++count_star; // count each star class once, via its canonical member
    }
    if (count_star == 0)
        return {count_mod, 0};
    u64 g = std::gcd(count_mod, count_star);
    return {count_mod / g, count_star / g};
}

/// Stable JSON object with exactly the documented keys.
inline std::string to_json(const GroupStarSummary& s) {
    std::string out = "{";
    char buf[64];
    auto add_u64 = [&](const char* k, u64 v, bool comma) {
        std::snprintf(buf, sizeof buf, "\"%s\":%llu", k, static_cast<unsigned long long>(v));
        out += buf;
        if (comma)
            out += ',';
    };
    auto add_bool = [&](const char* k, bool v) {
        out += '"';
        out += k;
        out += v ? "\":true," : "\":false,";
    };
    add_u64("n", s.n, true);
    add_u64("order", s.order, true);
    add_u64("j", s.j, true);
    add_u64("lambda", s.lambda, true);
    add_bool("cyclic", s.cyclic);
    add_bool("cyclic_semiprime", s.cyclic_semiprime);
    add_u64("primitive_root_count", s.primitive_root_count, true);
    if (s.smallest_primitive_root)
        add_u64("smallest_primitive_root", *s.smallest_primitive_root, false);
    else
        out += "\"smallest_primitive_root\":null";
    out += '}';
    return out;
}

} // namespace modstar
