#pragma once

#include <cstdlib>
#include <vector>

#include "modstar/congruence.hpp"

namespace modstar {

namespace detail {

inline void check_odd_modulus(u64 n) {
    check_modulus(n);
    if (n % 2 == 0)
        throw modulus_error("sequence modulus must be odd");
}

} // namespace detail

/// Signed recurrence q_i = n - 2|q_{i-1}|, q_1 = (-1)^((n+1)/2).
/// Terms alternate in sign pattern and are purely periodic.
inline std::vector<i64> schick_signed(u64 n, std::size_t count) {
    detail::check_odd_modulus(n);
    if (count == 0)
        throw precondition_error("schick_signed: count must be >= 1");
    std::vector<i64> terms;
    terms.reserve(count);
    i64 m = static_cast<i64>(n);
    i64 q = ((n + 1) / 2) % 2 == 0 ? 1 : -1;
    terms.push_back(q);
    for (std::size_t i = 1; i < count; ++i) {
        q = m - 2 * std::abs(q);
        terms.push_back(q);
    }
    return terms;
}

/// Absolute-value recurrence q_i = |n - 2 q_{i-1}|, q_1 = 1.
/// Term k of the result (0-based) is the canonical representative of 2^k.
inline std::vector<u64> schick_absolute(u64 n, std::size_t count) {
    detail::check_odd_modulus(n);
    if (count == 0)
        throw precondition_error("schick_absolute: count must be >= 1");
    std::vector<u64> terms;
    terms.reserve(count);
    i64 m = static_cast<i64>(n);
    i64 q = 1;
    terms.push_back(1);
    for (std::size_t i = 1; i < count; ++i) {
        q = std::abs(m - 2 * q);
        terms.push_back(static_cast<u64>(q));
    }
    return terms;
}

/// Base-g sequence, production path: term i is the canonical representative
/// of g^i mod n, starting at i = 0.
inline std::vector<u64> generalized_sequence(u64 n, u64 g, std::size_t count) {
    detail::check_odd_modulus(n);
    if (g == 0 || g >= n)
        throw precondition_error("generalized_sequence: base must satisfy 0 < g < n");
    if (std::gcd(g, n) != 1)
        throw coprimality_error("generalized_sequence: base must be coprime to n");
    std::vector<u64> terms;
    terms.reserve(count);
    u64 pw = 1;
    for (std::size_t i = 0; i < count; ++i) {
        terms.push_back(detail::canonical_value(pw, n));
        pw = mul_mod(pw, g, n);
    }
    return terms;
}

/// Base-g sequence via the literal nested-absolute-value recurrence
/// q_{i+1} = |n - |n - ... |n - g q_i|...||, with the bars applied g-1 times
/// and q_0 = 1. Kept as an iterative reference; generalized_sequence must
/// produce identical terms.
inline std::vector<u64> generalized_sequence_recurrence(u64 n, u64 g, std::size_t count) {
    detail::check_odd_modulus(n);
    if (n > 1'000'000'000)
        throw limit_error("generalized_sequence_recurrence: modulus too large for the iterative form");
    if (g == 0 || g >= n)
        throw precondition_error("generalized_sequence_recurrence: base must satisfy 0 < g < n");
    if (std::gcd(g, n) != 1)
        throw coprimality_error("generalized_sequence_recurrence: base must be coprime to n");
    std::vector<u64> terms;
    terms.reserve(count);
    i64 m = static_cast<i64>(n);
    i64 q = 1;
    terms.push_back(1);
    for (std::size_t i = 1; i < count; ++i) {
        i64 r = static_cast<i64>(g) * q;
        for (u64 fold = 1; fold < g; ++fold)
            r = std::abs(m - r);
        q = r;
        terms.push_back(static_cast<u64>(q));
    }
    return terms;
}

/// Period of the base-2 sequences: the order of 2 in the star group mod n.
inline u64 pes(u64 n) {
    detail::check_odd_modulus(n);
    return element_order(canonical_repr(2, n));
}

struct SchickSequence {
    u64 n{};
    u64 base{};
    // Index of the first emitted term: the recurrences start at q_1, the
    // generalized power form at q_0 = 1. Numerically q_1 = 1 = base^0, so the
    // emitted values coincide; the field records which convention applies.
    int start_index{};
    std::vector<i64> signed_terms;
    std::vector<u64> absolute_terms;
    u64 period{};
};

inline SchickSequence schick_sequence(u64 n, std::size_t count) {
    SchickSequence s;
    s.n = n;
    s.base = 2;
    s.start_index = 1;
    s.signed_terms = schick_signed(n, count);
    s.absolute_terms = schick_absolute(n, count);
    s.period = pes(n);
    return s;
}

} // namespace modstar
