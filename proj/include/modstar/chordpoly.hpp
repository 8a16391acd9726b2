#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "modstar/congruence.hpp"

namespace modstar {

// Exact polynomials over the integers: the chord polynomials S_k, their
// partial sums P_m, the minimal polynomials Psi_n of 2cos(2pi/n), and the
// cyclotomic polynomials Phi_n. Coefficients are arbitrary precision;
// every exactness claim below is enforced by zero-remainder division.

/// Dense univariate polynomial with exact integer coefficients,
/// constant term first.
class IntPolynomial {
  public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs)
            c_.emplace_back(v);
        trim();
    }

    static IntPolynomial constant(long v) { return IntPolynomial({v}); }

    /// x^k with unit coefficient.
    static IntPolynomial monomial(std::size_t k, long coeff = 1) {
        std::vector<mpz_class> c(k + 1, 0);
        c[k] = coeff;
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const mpz_class& coeff(std::size_t i) const {
        static const mpz_class zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    const std::vector<mpz_class>& coefficients() const { return c_; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    IntPolynomial operator+(const IntPolynomial& o) const {
        std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            r[i] += o.c_[i];
        return IntPolynomial(std::move(r));
    }

    IntPolynomial operator-(const IntPolynomial& o) const {
        std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            r[i] -= o.c_[i];
        return IntPolynomial(std::move(r));
    }

    IntPolynomial operator*(const IntPolynomial& o) const {
        if (is_zero() || o.is_zero())
            return {};
        std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return IntPolynomial(std::move(r));
    }

    /// Exact division; throws internal_error when the remainder is nonzero.
    IntPolynomial divide_exact(const IntPolynomial& den) const {
        if (den.is_zero())
            throw internal_error("IntPolynomial: division by zero polynomial");
        std::vector<mpz_class> rem = c_;
        std::vector<mpz_class> q(rem.size() > den.c_.size() ? rem.size() - den.c_.size() + 1 : 1, 0);
        const mpz_class& lead = den.c_.back();
        while (rem.size() >= den.c_.size()) {
            mpz_class& top = rem.back();
            if (top == 0) {
                rem.pop_back();
                continue;
            }
            if (top % lead != 0)
                throw internal_error("IntPolynomial: non-exact division");
            mpz_class factor = top / lead;
            std::size_t shift = rem.size() - den.c_.size();
            q[shift] = factor;
            for (std::size_t i = 0; i < den.c_.size(); ++i)
                rem[shift + i] -= factor * den.c_[i];
            rem.pop_back();
        }
        for (const auto& v : rem)
            if (v != 0)
                throw internal_error("IntPolynomial: non-exact division (remainder)");
        return IntPolynomial(std::move(q));
    }

    IntPolynomial compose(const IntPolynomial& inner) const {
        IntPolynomial r;
        for (std::size_t i = c_.size(); i-- > 0;) {
            r = r * inner;
            r = r + IntPolynomial(std::vector<mpz_class>{c_[i]});
        }
        return r;
    }

    mpz_class evaluate(const mpz_class& x) const {
        mpz_class r = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i];
        return r;
    }

    double evaluate(double x) const {
        long double r = 0.0L;
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i].get_d();
        return static_cast<double>(r);
    }

    /// Pretty form like "s^3 - 3s + 1".
    std::string to_string(const std::string& var = "s") const {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0)
                continue;
            mpz_class a = c_[i];
            bool neg = a < 0;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            mpz_class mag = neg ? mpz_class(-a) : a;
            if (mag != 1 || i == 0)
                out += mag.get_str();
            if (i >= 1) {
                out += var;
                if (i >= 2)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

    /// JSON array of exact coefficients, constant first.
    std::string coefficients_json() const {
        if (is_zero())
            return "[0]";
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i)
                out += ',';
            out += c_[i].get_str();
        }
        out += ']';
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

/// S_k: S_0 = 2, S_1 = s, S_k = s*S_{k-1} - S_{k-2}.
inline IntPolynomial s_poly(std::size_t k) {
    IntPolynomial prev{2};
    if (k == 0)
        return prev;
    IntPolynomial cur{0, 1};
    const IntPolynomial s{0, 1};
    for (std::size_t i = 1; i < k; ++i) {
        IntPolynomial next = s * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// P_m: P_0 = 1, P_1 = s+1, P_m = s*P_{m-1} - P_{m-2}.
inline IntPolynomial p_poly(std::size_t m) {
    IntPolynomial prev{1};
    if (m == 0)
        return prev;
    IntPolynomial cur{1, 1};
    const IntPolynomial s{0, 1};
    for (std::size_t i = 1; i < m; ++i) {
        IntPolynomial next = s * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// P_m assembled coefficient-wise: the s^k coefficient is (-1)^i * C(i+k, k)
/// with i = floor((m-k)/2). Independent route; must agree with p_poly.
inline IntPolynomial p_poly_explicit(std::size_t m) {
    std::vector<mpz_class> c(m + 1, 0);
    for (std::size_t k = 0; k <= m; ++k) {
        std::size_t i = (m - k) / 2;
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i + k), static_cast<unsigned long>(k));
        c[k] = (i % 2 == 0) ? binom : -binom;
    }
    return IntPolynomial(std::move(c));
}

/// Minimal polynomial of 2cos(2pi/n) for odd n, via the Moebius product
/// over divisors: product of P_{(d-1)/2}^{mu(n/d)}. Degree phi(n)/2.
inline IntPolynomial psi_poly(u64 n) {
    if (n < 3 || n % 2 == 0)
        throw modulus_error("psi_poly: n must be odd and >= 3");
    IntPolynomial num{1};
    IntPolynomial den{1};
    for (u64 d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 0)
            continue;
        auto f = p_poly(static_cast<std::size_t>((d - 1) / 2));
        if (mu == 1)
            num = num * f;
        else
            den = den * f;
    }
    auto psi = num.divide_exact(den);
    if (psi.degree() != static_cast<int>(euler_phi(n) / 2))
        throw internal_error("psi_poly: degree mismatch");
    return psi;
}

/// n-th cyclotomic polynomial via prod (x^d - 1)^mu(n/d).
inline IntPolynomial cyclotomic_poly(u64 n) {
    if (n == 0)
        throw precondition_error("cyclotomic_poly: n must be >= 1");
    if (n == 1)
        return IntPolynomial{-1, 1};
    IntPolynomial num{1};
    IntPolynomial den{1};
    for (u64 d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 0)
            continue;
        auto f = IntPolynomial::monomial(static_cast<std::size_t>(d)) - IntPolynomial{1};
        if (mu == 1)
            num = num * f;
        else
            den = den * f;
    }
    auto phi = num.divide_exact(den);
    if (phi.degree() != static_cast<int>(euler_phi(n)))
        throw internal_error("cyclotomic_poly: degree mismatch");
    return phi;
}

/// Expansion of x^(deg Psi_n) * Psi_n(x + 1/x) as a polynomial in x.
/// Equals cyclotomic_poly(n) for every odd n >= 3.
inline IntPolynomial psi_to_cyclotomic(u64 n) {
    auto psi = psi_poly(n);
    std::size_t deg = static_cast<std::size_t>(psi.degree());
    // x^deg * Psi(x + 1/x) = sum_k c_k (x^2+1)^k x^(deg-k)
    const IntPolynomial x2p1{1, 0, 1};
    IntPolynomial result;
    IntPolynomial power{1};
    for (std::size_t k = 0; k <= deg; ++k) {
        if (psi.coeff(k) != 0) {
            IntPolynomial term = power * IntPolynomial::monomial(deg - k);
            term = term * IntPolynomial(std::vector<mpz_class>{psi.coeff(k)});
            result = result + term;
        }
        power = power * x2p1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Chords of the regular 2n-gon (odd n). sigma_j is a signed diagonal length;
// sigma_0 = sigma_n = 2 is the diameter. Values repeat exactly on star
// congruence classes of the index.

enum class ChordNumbering { odd_indices, even_indices };

struct ChordIndex {
    u64 n{};
    u64 j{}; // 0 <= j <= n
    ChordNumbering numbering{ChordNumbering::odd_indices};
};

namespace detail {

inline void check_chord_modulus(u64 n) {
    if (n < 3 || n % 2 == 0)
        throw modulus_error("chord modulus must be odd and >= 3");
}

} // namespace detail

inline ChordIndex make_chord(u64 n, u64 j,
                             ChordNumbering numbering = ChordNumbering::odd_indices) {
    detail::check_chord_modulus(n);
    if (j > n)
        throw precondition_error("chord index must satisfy 0 <= j <= n");
    return {n, j, numbering};
}

/// Signed chord value: odd j gives (-1)^((n-j)/2) * 2 sin(pi j / 2n),
/// even j gives (-1)^(j/2) * 2 cos(pi j / 2n). Both branches yield 2 at the
/// diameter indices 0 and n.
inline double chord_value(const ChordIndex& c) {
    detail::check_chord_modulus(c.n);
    double angle = M_PI * static_cast<double>(c.j) / (2.0 * static_cast<double>(c.n));
    if (c.j % 2 == 1) {
        double sign = ((c.n - c.j) / 2) % 2 == 0 ? 1.0 : -1.0;
        return sign * 2.0 * std::sin(angle);
    }
    double sign = (c.j / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * 2.0 * std::cos(angle);
}

/// Reduce an arbitrary integer index to the canonical representative in
/// {0} union {odd 1..n}: chords have index period 2n, are even in the index,
/// and satisfy sigma_j = sigma_{n-j}. Unlike canonical_repr this admits the
/// diameter indices 0 and n, which lie outside the star group.
inline u64 reduce_chord_index(i64 t, u64 n) {
    detail::check_chord_modulus(n);
    i64 period = 2 * static_cast<i64>(n);
    i64 r = ((t % period) + period) % period;
    u64 u = static_cast<u64>(r);
    if (u > n)
        u = 2 * n - u;
    if (u != 0 && u % 2 == 0)
        u = n - u;
    return u;
}

/// Representative chord index for k in 1..n-1: j = |n - 4k| reduced, or the
/// even-numbering alternative j = n - |n - 4k|.
inline ChordIndex chord_index_from_k(u64 k, u64 n,
                                     ChordNumbering numbering = ChordNumbering::odd_indices) {
    detail::check_chord_modulus(n);
    if (k == 0 || k >= n)
        throw precondition_error("chord_index_from_k: k must satisfy 1 <= k <= n-1");
    i64 raw = std::abs(static_cast<i64>(n) - 4 * static_cast<i64>(k));
    u64 j = reduce_chord_index(raw, n);
    if (numbering == ChordNumbering::even_indices)
        return {n, n - j, numbering};
    return {n, j, numbering};
}

/// Product rule sigma_i * sigma_j = sigma_{i+j} + sigma_{i-j}, indices reduced
/// to canonical form. i == j produces the diameter sigma_0 = 2.
inline std::pair<ChordIndex, ChordIndex> chord_product(const ChordIndex& a, const ChordIndex& b) {
    if (a.n != b.n)
        throw modulus_mismatch_error("chord_product: chords belong to different polygons");
    u64 n = a.n;
    u64 sum = reduce_chord_index(static_cast<i64>(a.j) + static_cast<i64>(b.j), n);
    u64 diff = reduce_chord_index(static_cast<i64>(a.j) - static_cast<i64>(b.j), n);
    return {ChordIndex{n, sum, a.numbering}, ChordIndex{n, diff, a.numbering}};
}

/// Expansion of a product of m chords into the 2^(m-1) chords
/// sigma_{j1 +- j2 +- ... +- jm}, as a sorted index multiset.
inline std::vector<ChordIndex> chord_multi_product(const std::vector<ChordIndex>& chords) {
    if (chords.empty())
        throw precondition_error("chord_multi_product: need at least one chord");
    u64 n = chords[0].n;
    for (const auto& c : chords)
        if (c.n != n)
            throw modulus_mismatch_error("chord_multi_product: mixed polygons");
    std::vector<i64> sums{static_cast<i64>(chords[0].j)};
    for (std::size_t i = 1; i < chords.size(); ++i) {
        std::vector<i64> next;
        next.reserve(sums.size() * 2);
        for (i64 s : sums) {
            next.push_back(s + static_cast<i64>(chords[i].j));
            next.push_back(s - static_cast<i64>(chords[i].j));
        }
        sums = std::move(next);
    }
    std::vector<u64> reduced;
    reduced.reserve(sums.size());
    for (i64 s : sums)
        reduced.push_back(reduce_chord_index(s, n));
    std::sort(reduced.begin(), reduced.end());
    std::vector<ChordIndex> out;
    out.reserve(reduced.size());
    for (u64 j : reduced)
        out.push_back({n, j, chords[0].numbering});
    return out;
}

/// Sum of the full representative chord set. Mathematically -1 for every
/// odd n; returns the rounded integer and verifies the numeric residual.
inline long long gauss_sum_check(u64 n) {
    detail::check_chord_modulus(n);
    double sum = 0.0;
    for (u64 k = 1; k <= (n - 1) / 2; ++k)
        sum += chord_value(chord_index_from_k(k, n));
    double rounded = std::round(sum);
    if (std::abs(sum - rounded) > 1e-6)
        throw internal_error("gauss_sum_check: sum is not close to an integer");
    return static_cast<long long>(rounded);
}

/// Weighted orthogonality integral of S_k S_l / sqrt(4 - s^2) over [-2, 2],
/// by Gauss-Chebyshev quadrature with enough nodes to be exact.
/// Values: 0 for k != l, 2*pi for k == l != 0, 4*pi for k == l == 0.
inline double orthogonality_check(unsigned k, unsigned l) {
    if (k > 50 || l > 50)
        throw precondition_error("orthogonality_check: degrees restricted to <= 50");
    unsigned nodes = k + l + 1;
    double acc = 0.0;
    for (unsigned i = 1; i <= nodes; ++i) {
        double x = std::cos((2.0 * i - 1.0) * M_PI / (2.0 * nodes));
        double s = 2.0 * x;
        // evaluate S_k(s) and S_l(s) by the value recurrence
        auto s_at = [s](unsigned deg) {
            double prev = 2.0, cur = s;
            if (deg == 0)
                return prev;
            for (unsigned t = 1; t < deg; ++t) {
                double nxt = s * cur - prev;
                prev = cur;
                cur = nxt;
            }
            return cur;
        };
        acc += s_at(k) * s_at(l);
    }
    return acc * M_PI / nodes;
}

/// Verifies the splitting of P_6 into two cubic factors with coefficients
/// c = (1 -+ sqrt(13))/2, exactly in the quadratic extension and numerically.
inline bool p6_factorization_check() {
    // elements a + b*sqrt(13) with rational a, b
    struct Q13 {
        mpq_class a, b;
        Q13 operator+(const Q13& o) const { return {a + o.a, b + o.b}; }
        Q13 operator-(const Q13& o) const { return {a - o.a, b - o.b}; }
        Q13 operator*(const Q13& o) const { return {a * o.a + 13 * b * o.b, a * o.b + b * o.a}; }
        bool operator==(const Q13& o) const { return a == o.a && b == o.b; }
    };
    const Q13 zero{0, 0}, one{1, 0};
    const Q13 c1{mpq_class(1, 2), mpq_class(-1, 2)};
    const Q13 c2{mpq_class(1, 2), mpq_class(1, 2)};

    auto cubic = [&](const Q13& c) {
        // s^3 + c s^2 - s - (1 + c)
        return std::vector<Q13>{zero - (one + c), Q13{-1, 0}, c, one};
    };
    auto f1 = cubic(c1);
    auto f2 = cubic(c2);
    std::vector<Q13> prod(7, zero);
    for (std::size_t i = 0; i < f1.size(); ++i)
        for (std::size_t j = 0; j < f2.size(); ++j)
            prod[i + j] = prod[i + j] + f1[i] * f2[j];

    auto p6 = p_poly(6);
    for (std::size_t i = 0; i <= 6; ++i) {
        if (prod[i].b != 0)
            return false;
        if (prod[i].a != mpq_class(p6.coeff(i)))
            return false;
    }

    // numeric spot check of the same identity
    const double root13 = std::sqrt(13.0);
    const double d1 = (1.0 - root13) / 2.0, d2 = (1.0 + root13) / 2.0;
    for (double s : {-1.7, -0.4, 0.3, 1.1, 1.9}) {
        double lhs = p6.evaluate(s);
        double rhs = (s * s * s + d1 * s * s - s - 1.0 - d1) * (s * s * s + d2 * s * s - s - 1.0 - d2);
        if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs)))
            return false;
    }
    return true;
}

/// SVG rendering of the upper unit semicircle, the 2n-gon vertices on it and
/// the representative chords, each drawn from the rightmost vertex with its
/// label and sign. Byte-deterministic for a given n.
inline std::string render_chord_diagram_svg(u64 n) {
    detail::check_chord_modulus(n);
    if (n > 199)
        throw precondition_error("render_chord_diagram_svg: n restricted to <= 199");

    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    // polygon vertex t at angle pi*t/n, y flipped for SVG
    auto vx = [&](u64 t) { return std::cos(M_PI * static_cast<double>(t) / static_cast<double>(n)); };
    auto vy = [&](u64 t) { return -std::sin(M_PI * static_cast<double>(t) / static_cast<double>(n)); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.25 -1.25 2.5 1.45\" "
           "width=\"800\" height=\"464\">\n";
    svg += "<title>chords of the " + std::to_string(2 * n) + "-gon (n=" + std::to_string(n) + ")</title>\n";
    svg += "<path d=\"M -1 0 A 1 1 0 0 1 1 0\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.008\"/>\n";
    svg += "<line x1=\"-1.1\" y1=\"0\" x2=\"1.1\" y2=\"0\" stroke=\"#bbbbbb\" stroke-width=\"0.004\"/>\n";
    for (u64 t = 0; t <= n; ++t) {
        svg += "<circle cx=\"" + fmt(vx(t)) + "\" cy=\"" + fmt(vy(t)) +
               "\" r=\"0.015\" fill=\"#333333\"/>\n";
    }
    for (u64 k = 1; k <= (n - 1) / 2; ++k) {
        auto c = chord_index_from_k(k, n);
        double value = chord_value(c);
        svg += "<line class=\"chord\" x1=\"" + fmt(vx(0)) + "\" y1=\"" + fmt(vy(0)) + "\" x2=\"" +
               fmt(vx(c.j)) + "\" y2=\"" + fmt(vy(c.j)) +
               "\" stroke=\"#1f77b4\" stroke-width=\"0.010\"/>\n";
        double mx = 0.5 * (vx(0) + vx(c.j)) + 0.03;
        double my = 0.5 * (vy(0) + vy(c.j)) - 0.02;
        svg += "<text x=\"" + fmt(mx) + "\" y=\"" + fmt(my) +
               "\" font-size=\"0.07\" fill=\"#1f77b4\">\xcf\x83" + std::to_string(c.j) +
               (value < 0 ? " (-)" : " (+)") + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void emit_chord_diagram(u64 n, const std::string& path) {
    auto svg = render_chord_diagram_svg(n);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("emit_chord_diagram: cannot open " + path);
    out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!out)
        throw io_error("emit_chord_diagram: write failed for " + path);
}

} // namespace modstar
