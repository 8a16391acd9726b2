#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "modstar/errors.hpp"

namespace modstar {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// (a * b) mod m without overflow for any 64-bit operands.
inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// (base ^ exp) mod m by binary exponentiation.
inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1)
            r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

namespace detail {

inline bool miller_rabin_witness(u64 a, u64 d, unsigned r, u64 n) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace detail

/// Deterministic primality test, valid for all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set decides primality for every n < 3.3e24.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!detail::miller_rabin_witness(a, d, r, n))
            return false;
    }
    return true;
}

/// Prime factorization, primes ascending, exponents >= 1.
struct Factorization {
    std::vector<std::pair<u64, unsigned>> factors;

    std::size_t distinct_primes() const { return factors.size(); }

    u64 value() const {
        u64 v = 1;
        for (const auto& [p, e] : factors)
            for (unsigned i = 0; i < e; ++i)
                v *= p;
        return v;
    }

    std::vector<u64> primes() const {
        std::vector<u64> ps;
        ps.reserve(factors.size());
        for (const auto& [p, e] : factors)
            ps.push_back(p);
        return ps;
    }
};

namespace detail {

inline u64 pollard_rho(u64 n) {
    // n is odd, composite and has no factor below the trial-division bound.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

inline Factorization factorize(u64 n) {
    if (n < 2)
        throw precondition_error("factorize: n must be >= 2");
    Factorization f;
    auto push = [&f](u64 p, unsigned e) { f.factors.emplace_back(p, e); };
    unsigned e = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++e;
    }
    if (e)
        push(2, e);
    for (u64 d = 3; d <= 10000 && d * d <= n; d += 2) {
        if (n % d == 0) {
            e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            push(d, e);
        }
    }
    if (n > 1) {
        std::vector<u64> rest;
        detail::factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i])
                ++j;
            push(rest[i], static_cast<unsigned>(j - i));
            i = j;
        }
    }
    return f;
}

/// All divisors of n, ascending.
inline std::vector<u64> divisors(u64 n) {
    if (n == 1)
        return {1};
    std::vector<u64> ds{1};
    for (const auto& [p, e] : factorize(n).factors) {
        std::size_t sz = ds.size();
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t k = 0; k < sz; ++k)
                ds.push_back(ds[k] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Euler's totient via the factorization product formula.
inline u64 euler_phi(u64 n) {
    if (n == 0)
        throw precondition_error("euler_phi: n must be >= 1");
    if (n == 1)
        return 1;
    u64 r = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            r *= p;
    }
    return r;
}

/// Carmichael's function: lcm of the lambda values of the prime-power parts.
inline u64 carmichael_lambda(u64 n) {
    if (n == 0)
        throw precondition_error("carmichael_lambda: n must be >= 1");
    if (n == 1)
        return 1;
    u64 l = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        u64 m;
        if (p == 2) {
            m = e == 1 ? 1 : (e == 2 ? 2 : (u64{1} << (e - 2)));
        } else {
            m = p - 1;
            for (unsigned i = 1; i < e; ++i)
                m *= p;
        }
        l = std::lcm(l, m);
    }
    return l;
}

/// Moebius function: 0 on non-squarefree n, else (-1)^(number of prime factors).
inline int moebius(u64 n) {
    if (n == 0)
        throw precondition_error("moebius: n must be >= 1");
    if (n == 1)
        return 1;
    auto f = factorize(n);
    for (const auto& [p, e] : f.factors)
        if (e > 1)
            return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

/// Bitset sieve of Eratosthenes over [2, limit], odd numbers packed.
/// Immutable after construction and safe to share across threads.
class PrimeSieve {
  public:
    static constexpr u64 kDefaultMaxLimit = 100'000'000;

    explicit PrimeSieve(u64 limit) : limit_(limit) {
        if (limit < 2)
            throw precondition_error("PrimeSieve: limit must be >= 2");
        bits_.assign((limit / 2 + 63) / 64, ~u64{0});
        // bit i represents the odd number 2i+1; 1 is not prime
        clear_bit(0);
        for (u64 p = 3; p * p <= limit; p += 2) {
            if (!test_bit(p >> 1))
                continue;
            for (u64 q = p * p; q <= limit; q += 2 * p)
                clear_bit(q >> 1);
        }
        // mask out bits beyond limit
        for (u64 i = limit / 2 + (limit & 1 ? 1 : 0); i < bits_.size() * 64; ++i)
            clear_bit(i);
    }

    u64 limit() const { return limit_; }

    bool is_prime(u64 v) const {
        if (v == 2)
            return true;
        if (v < 2 || v % 2 == 0)
            return false;
        if (v > limit_)
            throw precondition_error("PrimeSieve: query above limit");
        return test_bit(v >> 1);
    }

    u64 count() const {
        u64 c = 1; // the prime 2
        for (u64 w : bits_)
            c += std::popcount(w);
        return c;
    }

    std::vector<u64> primes() const {
        std::vector<u64> ps;
        ps.push_back(2);
        for_each_prime([&ps](u64 p) {
            if (p > 2)
                ps.push_back(p);
        });
        return ps;
    }

    template <typename F> void for_each_prime(F&& f) const {
        if (limit_ >= 2)
            f(u64{2});
        for (u64 p = 3; p <= limit_; p += 2)
            if (test_bit(p >> 1))
                f(p);
    }

  private:
    void clear_bit(u64 i) { bits_[i >> 6] &= ~(u64{1} << (i & 63)); }
    bool test_bit(u64 i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }

    u64 limit_;
    std::vector<u64> bits_;
};

inline PrimeSieve primes_up_to(u64 x, u64 max_limit = PrimeSieve::kDefaultMaxLimit) {
    if (x < 2)
        throw precondition_error("primes_up_to: x must be >= 2");
    if (x > max_limit)
        throw limit_error("primes_up_to: limit exceeds configured memory bound");
    return PrimeSieve(x);
}

} // namespace modstar
