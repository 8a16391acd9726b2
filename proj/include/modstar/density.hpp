#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "modstar/congruence.hpp"

namespace modstar {

// Empirical primitive-root density surveys over primes (Artin-style) and over
// Sophie Germain semiprimes. Long runs are range-partitioned across worker
// threads and persisted to an append-only CSV checkpoint so an interrupted
// survey resumes without recomputing or double counting.

struct SurveyRecord {
    u64 subject{};       // the prime p, or p1 of an SG pair
    u64 group_order{};   // phi(n)/2 of the star group surveyed
    u64 element_order{}; // star order of the base in that group
    bool is_primitive_root{};
};

struct SurveySummary {
    std::string kind; // "prime" or "sg"
    u64 base{};
    u64 limit{};
    u64 subjects{};
    u64 hits{};
    double elapsed_seconds{}; // informational; never serialized
    std::string checkpoint_path;
    bool resumed{};

    double density() const { return subjects == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(subjects); }

    std::string to_json() const {
        std::string out = "{\"schema_version\":1,\"kind\":\"" + kind + "\",";
        char buf[128];
        std::snprintf(buf, sizeof buf, "\"base\":%llu,\"limit\":%llu,\"subjects\":%llu,\"hits\":%llu,",
                      static_cast<unsigned long long>(base), static_cast<unsigned long long>(limit),
                      static_cast<unsigned long long>(subjects), static_cast<unsigned long long>(hits));
        out += buf;
        if (subjects == 0) {
            out += "\"density\":null";
        } else {
            std::snprintf(buf, sizeof buf, "\"density\":{\"num\":%llu,\"den\":%llu,\"value\":%.9f}",
                          static_cast<unsigned long long>(hits), static_cast<unsigned long long>(subjects),
                          density());
            out += buf;
        }
        if (kind == "sg")
            out += ",\"pair_form\":\"6k-1\"";
        if (checkpoint_path.empty())
            out += ",\"checkpoint\":null";
        else
            out += ",\"checkpoint\":\"" + checkpoint_path + "\"";
        out += '}';
        return out;
    }
};

struct SurveyConfig {
    enum class Kind { prime, sg };
    Kind kind{Kind::prime};
    u64 base{2};
    u64 limit{};
    unsigned partitions{1};
    std::string checkpoint_path; // empty: no persistence
    bool resume{false};
    unsigned threads{0}; // 0: hardware concurrency
};

namespace detail {

inline bool is_perfect_square(u64 a) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(a)));
    for (u64 c = r > 0 ? r - 1 : 0; c <= r + 1; ++c)
        if (c * c == a)
            return true;
    return false;
}

/// Distinct prime factors of m by trial division against a prepared prime
/// list covering sqrt(m); any remainder is itself prime.
inline void distinct_factors_into(u64 m, const std::vector<u64>& trial_primes, std::vector<u64>& out) {
    out.clear();
    for (u64 q : trial_primes) {
        if (q * q > m)
            break;
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0)
                m /= q;
        }
    }
    if (m > 1)
        out.push_back(m);
}

inline SurveyRecord prime_record(u64 a, u64 p, const std::vector<u64>& trial_primes, std::vector<u64>& scratch) {
    u64 m = (p - 1) / 2;
    distinct_factors_into(m, trial_primes, scratch);
    u64 ord = star_order_from(a % p, p, m, scratch);
    return {p, m, ord, ord == m};
}

inline SurveyRecord sg_record(u64 b, u64 p1, const std::vector<u64>& trial_primes, std::vector<u64>& scratch) {
    u64 p2 = 2 * p1 + 1;
    u64 n = p1 * p2;
    u64 m = p1 * (p1 - 1); // phi(n)/2
    distinct_factors_into(p1 - 1, trial_primes, scratch);
    scratch.push_back(p1);
    u64 ord = star_order_from(b % n, n, m, scratch);
    return {p1, m, ord, ord == m};
}

} // namespace detail

/// All Sophie Germain pairs (p, 2p+1), both prime, with 5 <= p <= x.
/// The pairs (2,5) and (3,7) fall outside the 6k-1 normal form and are
/// excluded; every SG prime >= 5 is automatically of that form.
inline std::vector<std::pair<u64, u64>> sophie_germain_pairs(u64 x) {
    std::vector<std::pair<u64, u64>> out;
    if (x < 5)
        return out;
    auto sieve = primes_up_to(x);
    sieve.for_each_prime([&out](u64 p) {
        if (p >= 5 && is_prime(2 * p + 1))
            out.emplace_back(p, 2 * p + 1);
    });
    return out;
}

/// Fraction of odd primes p <= x (p not dividing a) for which a generates the
/// star group mod p, i.e. has order (p-1)/2. Sequential reference path.
inline SurveySummary artin_density_star(u64 a, u64 x) {
    if (a < 2 || detail::is_perfect_square(a))
        throw invalid_base_error("artin_density_star: base must be >= 2 and not a perfect square");
    if (x > PrimeSieve::kDefaultMaxLimit)
        throw limit_error("artin_density_star: limit above configured bound");
    auto sieve = primes_up_to(x);
    auto trial = primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2).primes();
    SurveySummary s;
    s.kind = "prime";
    s.base = a;
    s.limit = x;
    std::vector<u64> scratch;
    sieve.for_each_prime([&](u64 p) {
        if (p == 2 || a % p == 0)
            return;
        auto rec = detail::prime_record(a, p, trial, scratch);
        ++s.subjects;
        if (rec.is_primitive_root)
            ++s.hits;
    });
    return s;
}

/// Fraction of SG pairs (p1 <= x) whose semiprime product has b as a star
/// primitive root. Pairs containing b itself are skipped (gcd filter).
inline SurveySummary sg_density_star(u64 b, u64 x) {
    if (!is_prime(b))
        throw invalid_base_error("sg_density_star: base must be prime");
    if (x > 10'000'000)
        throw limit_error("sg_density_star: limit above configured bound");
    SurveySummary s;
    s.kind = "sg";
    s.base = b;
    s.limit = x;
    if (x < 5)
        return s;
    auto trial = primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2).primes();
    std::vector<u64> scratch;
    for (const auto& [p1, p2] : sophie_germain_pairs(x)) {
        if (b == p1 || b == p2)
            continue;
        auto rec = detail::sg_record(b, p1, trial, scratch);
        ++s.subjects;
        if (rec.is_primitive_root)
            ++s.hits;
    }
    return s;
}

/// Integral of dt / (ln t * ln(2t+1)) from 2 to x by adaptive Simpson
/// quadrature, relative error well below 1e-6.
inline double asymptotic_sg_integral(double x) {
    if (x <= 2.0)
        return 0.0;
    auto f = [](double t) { return 1.0 / (std::log(t) * std::log(2.0 * t + 1.0)); };
    auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };
    // classic adaptive Simpson with an explicit segment stack
    struct Seg {
        double a, b, fa, fm, fb, whole;
        int depth;
    };
    double total = 0.0;
    std::vector<Seg> stack;
    {
        double a = 2.0, b = x;
        double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0});
    }
    const double eps = 1e-10;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double m = 0.5 * (s.a + s.b);
        double lm = 0.5 * (s.a + m), rm = 0.5 * (m + s.b);
        double flm = f(lm), frm = f(rm);
        double left = simpson(s.a, m, s.fa, flm, s.fm);
        double right = simpson(m, s.b, s.fm, frm, s.fb);
        double delta = left + right - s.whole;
        if (s.depth > 48 || std::abs(delta) <= 15.0 * eps * std::max(1.0, std::abs(left + right))) {
            total += left + right + delta / 15.0;
        } else {
            stack.push_back({s.a, m, s.fa, flm, s.fm, left, s.depth + 1});
            stack.push_back({m, s.b, s.fm, frm, s.fb, right, s.depth + 1});
        }
    }
    return total;
}

namespace detail {

inline std::string survey_header(const SurveyConfig& c) {
    std::string kind = c.kind == SurveyConfig::Kind::prime ? "prime" : "sg";
    char buf[160];
    std::snprintf(buf, sizeof buf, "# modstar-survey v1 kind=%s base=%llu limit=%llu", kind.c_str(),
                  static_cast<unsigned long long>(c.base), static_cast<unsigned long long>(c.limit));
    return buf;
}

constexpr const char* kSurveyColumns = "subject,group_order,element_order,is_pr";

struct CheckpointState {
    std::vector<SurveyRecord> rows; // subject-sorted on load
    bool complete{};
    bool header_present{};
    std::size_t valid_bytes{}; // length of the well-formed prefix

    bool contains(u64 subject) const {
        auto it = std::lower_bound(rows.begin(), rows.end(), subject,
                                   [](const SurveyRecord& r, u64 s) { return r.subject < s; });
        return it != rows.end() && it->subject == subject;
    }
};

inline bool parse_u64_field(const std::string& s, u64& out) {
    if (s.empty() || s.size() > 20)
        return false;
    u64 v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            return false;
        v = v * 10 + static_cast<u64>(ch - '0');
    }
    out = v;
    return true;
}

inline CheckpointState load_checkpoint(const std::string& path, const SurveyConfig& cfg,
                                       const std::vector<u64>& subjects) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open checkpoint: " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < data.size()) {
        std::size_t nl = data.find('\n', start);
        if (nl == std::string::npos) {
            // torn trailing line from an interrupted write: ignore it
            break;
        }
        lines.push_back(data.substr(start, nl - start));
        start = nl + 1;
    }
    std::size_t valid_bytes = start;
    if (lines.empty())
        return {};
    if (lines[0] != survey_header(cfg))
        throw checkpoint_error("checkpoint header does not match this survey: " + lines[0]);
    if (lines.size() < 2 || lines[1] != kSurveyColumns)
        throw checkpoint_error("checkpoint column header missing or malformed");

    CheckpointState st;
    st.header_present = true;
    st.valid_bytes = valid_bytes;
    u64 summary_subjects = 0, summary_hits = 0;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.rfind("# summary ", 0) == 0) {
            unsigned long long su = 0, hi = 0;
            if (std::sscanf(line.c_str(), "# summary subjects=%llu hits=%llu", &su, &hi) != 2 ||
                i + 1 != lines.size())
                throw checkpoint_error("malformed summary row: " + line);
            summary_subjects = su;
            summary_hits = hi;
            st.complete = true;
            break;
        }
        std::string field[4];
        int nf = 0;
        std::size_t pos = 0;
        while (nf < 4) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                field[nf++] = line.substr(pos);
                pos = std::string::npos;
                break;
            }
            field[nf++] = line.substr(pos, comma - pos);
            pos = comma + 1;
        }
        SurveyRecord r;
        u64 pr = 0;
        if (nf != 4 || pos != std::string::npos || !parse_u64_field(field[0], r.subject) ||
            !parse_u64_field(field[1], r.group_order) || !parse_u64_field(field[2], r.element_order) ||
            !parse_u64_field(field[3], pr) || pr > 1 || r.element_order == 0 ||
            r.group_order % r.element_order != 0)
            throw checkpoint_error("corrupt checkpoint row " + std::to_string(i + 1) + ": " + line);
        r.is_primitive_root = pr == 1;
        if (!std::binary_search(subjects.begin(), subjects.end(), r.subject))
            throw checkpoint_error("checkpoint row has unexpected subject: " + line);
        if (!st.rows.empty() && r.subject <= st.rows.back().subject)
            throw checkpoint_error("checkpoint rows out of order at: " + line);
        st.rows.push_back(r);
    }
    if (st.complete) {
        u64 hits = 0;
        for (const auto& r : st.rows)
            if (r.is_primitive_root)
                ++hits;
        if (summary_subjects != st.rows.size() || summary_hits != hits)
            throw checkpoint_error("checkpoint summary disagrees with its rows");
    }
    return st;
}

class CheckpointWriter {
  public:
    CheckpointWriter(const std::string& path, bool append) {
        if (path.empty())
            return;
        f_ = std::fopen(path.c_str(), append ? "ab" : "wb");
        if (!f_)
            throw io_error("cannot open checkpoint for writing: " + path);
    }
    ~CheckpointWriter() {
        if (f_)
            std::fclose(f_);
    }
    CheckpointWriter(const CheckpointWriter&) = delete;
    CheckpointWriter& operator=(const CheckpointWriter&) = delete;

    bool active() const { return f_ != nullptr; }

    void line(const std::string& s) {
        if (!f_)
            return;
        std::fputs(s.c_str(), f_);
        std::fputc('\n', f_);
    }

    void row(const SurveyRecord& r) {
        if (!f_)
            return;
        std::fprintf(f_, "%llu,%llu,%llu,%d\n", static_cast<unsigned long long>(r.subject),
                     static_cast<unsigned long long>(r.group_order),
                     static_cast<unsigned long long>(r.element_order), r.is_primitive_root ? 1 : 0);
    }

    /// Durability point between partitions.
    void sync() {
        if (!f_)
            return;
        std::fflush(f_);
        ::fsync(fileno(f_));
    }

  private:
    std::FILE* f_{nullptr};
};

} // namespace detail

/// Partitioned, checkpointed survey. Workers each own a contiguous slice of
/// the subject list; counts merge by addition, so partition count never
/// changes the result. Checkpoint rows are written by a single writer in
/// subject order with an fsync at every partition boundary.
inline SurveySummary run_survey(const SurveyConfig& cfg) {
    if (cfg.partitions == 0)
        throw precondition_error("run_survey: partitions must be >= 1");
    if (cfg.kind == SurveyConfig::Kind::prime) {
        if (cfg.base < 2 || detail::is_perfect_square(cfg.base))
            throw invalid_base_error("run_survey: base must be >= 2 and not a perfect square");
        if (cfg.limit > PrimeSieve::kDefaultMaxLimit)
            throw limit_error("run_survey: limit above configured bound");
    } else {
        if (!is_prime(cfg.base))
            throw invalid_base_error("run_survey: sg base must be prime");
        if (cfg.limit > 10'000'000)
            throw limit_error("run_survey: limit above configured bound");
    }

    auto t_start = std::chrono::steady_clock::now();

    std::vector<u64> subjects;
    if (cfg.limit >= 2) {
        if (cfg.kind == SurveyConfig::Kind::prime) {
            auto sieve = primes_up_to(cfg.limit);
            sieve.for_each_prime([&](u64 p) {
                if (p > 2 && cfg.base % p != 0)
                    subjects.push_back(p);
            });
        } else {
            for (const auto& [p1, p2] : sophie_germain_pairs(cfg.limit))
                if (cfg.base != p1 && cfg.base != p2)
                    subjects.push_back(p1);
        }
    }

    detail::CheckpointState prior;
    bool file_exists = false;
    if (!cfg.checkpoint_path.empty()) {
        std::ifstream probe(cfg.checkpoint_path);
        file_exists = probe.good();
    }
    if (cfg.resume && file_exists)
        prior = detail::load_checkpoint(cfg.checkpoint_path, cfg, subjects);

    SurveySummary summary;
    summary.kind = cfg.kind == SurveyConfig::Kind::prime ? "prime" : "sg";
    summary.base = cfg.base;
    summary.limit = cfg.limit;
    summary.checkpoint_path = cfg.checkpoint_path;
    summary.resumed = cfg.resume && file_exists && prior.header_present;

    u64 prior_hits = 0;
    for (const auto& r : prior.rows)
        if (r.is_primitive_root)
            ++prior_hits;

    if (prior.complete) {
        summary.subjects = prior.rows.size();
        summary.hits = prior_hits;
        summary.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return summary;
    }

    u64 trial_limit = static_cast<u64>(std::sqrt(static_cast<double>(std::max<u64>(cfg.limit, 4)))) + 2;
    auto trial = primes_up_to(trial_limit).primes();

    const std::size_t parts = cfg.partitions;
    std::vector<std::vector<SurveyRecord>> results(parts);
    std::vector<char> ready(parts, 0);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto chunk_bounds = [&](std::size_t i) {
        std::size_t n = subjects.size();
        return std::pair<std::size_t, std::size_t>{i * n / parts, (i + 1) * n / parts};
    };

    auto worker = [&]() {
        std::vector<u64> scratch;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= parts)
                return;
            auto [lo, hi] = chunk_bounds(i);
            auto& out = results[i];
            for (std::size_t k = lo; k < hi; ++k) {
                u64 subject = subjects[k];
                if (prior.contains(subject))
                    continue;
                out.push_back(cfg.kind == SurveyConfig::Kind::prime
                                  ? detail::prime_record(cfg.base, subject, trial, scratch)
                                  : detail::sg_record(cfg.base, subject, trial, scratch));
            }
            {
                std::lock_guard<std::mutex> lk(mu);
                ready[i] = 1;
            }
            cv.notify_all();
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = cfg.threads ? cfg.threads : (hw ? hw : 2);
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(parts));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back(worker);

    u64 new_hits = 0, new_rows = 0;
    {
        // drop any torn trailing bytes before appending
        if (summary.resumed && ::truncate(cfg.checkpoint_path.c_str(),
                                          static_cast<off_t>(prior.valid_bytes)) != 0)
            throw io_error("cannot truncate checkpoint: " + cfg.checkpoint_path);
        detail::CheckpointWriter w(cfg.checkpoint_path, /*append=*/summary.resumed);
        if (w.active() && !summary.resumed) {
            w.line(detail::survey_header(cfg));
            w.line(detail::kSurveyColumns);
            w.sync();
        }
        for (std::size_t i = 0; i < parts; ++i) {
            {
                std::unique_lock<std::mutex> lk(mu);
                cv.wait(lk, [&] { return ready[i] != 0; });
            }
            for (const auto& r : results[i]) {
                w.row(r);
                ++new_rows;
                if (r.is_primitive_root)
                    ++new_hits;
            }
            w.sync();
        }
        for (auto& t : pool)
            t.join();
        summary.subjects = prior.rows.size() + new_rows;
        summary.hits = prior_hits + new_hits;
        char buf[96];
        std::snprintf(buf, sizeof buf, "# summary subjects=%llu hits=%llu",
                      static_cast<unsigned long long>(summary.subjects),
                      static_cast<unsigned long long>(summary.hits));
        w.line(buf);
        w.sync();
    }

    summary.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return summary;
}

} // namespace modstar
