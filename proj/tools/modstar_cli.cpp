// Batch CLI for the modstar library: star-congruence groups, Schick
// sequences, closed-form square roots, density surveys, chord polynomials
// and chord diagrams. Results go to stdout, logs to stderr.
//
// Exit codes: 0 success, 1 usage, 2 domain precondition, 3 I/O,
// 4 internal consistency.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modstar/chordpoly.hpp"
#include "modstar/congruence.hpp"
#include "modstar/density.hpp"
#include "modstar/quadratic.hpp"
#include "modstar/sequences.hpp"

namespace {

using modstar::u64;

std::string fmt_double(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<u64> parse_index_list(const std::string& s) {
    std::vector<u64> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty())
            throw modstar::precondition_error("empty entry in index list '" + s + "'");
        for (char c : tok)
            if (c < '0' || c > '9')
                throw modstar::precondition_error("bad index '" + tok + "'");
        out.push_back(std::stoull(tok));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::string join_u64(const std::vector<u64>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string checkpoint_with_default_dir(const std::string& path) {
    if (path.empty() || path.front() == '/')
        return path;
    if (const char* dir = std::getenv("MODSTAR_CHECKPOINT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

struct GroupCmd {
    u64 n{};
    std::string format{"plain"};

    void run() const {
        auto elements = modstar::group_elements(n);
        std::vector<u64> reps;
        reps.reserve(elements.size());
        for (const auto& e : elements)
            reps.push_back(e.repr);

        if (n % 2 == 1) {
            auto s = modstar::classify(n);
            if (format == "json") {
                std::string inner = modstar::to_json(s);
                inner = inner.substr(1, inner.size() - 2);
                std::cout << "{\"schema_version\":1," << inner << ",\"elements\":[" << join_u64(reps, ",")
                          << "]}\n";
            } else if (format == "csv") {
                std::cout << "n,order,j,lambda,cyclic,cyclic_semiprime,primitive_root_count,"
                             "smallest_primitive_root,elements\n";
                std::cout << s.n << ',' << s.order << ',' << s.j << ',' << s.lambda << ','
                          << (s.cyclic ? "true" : "false") << ',' << (s.cyclic_semiprime ? "true" : "false")
                          << ',' << s.primitive_root_count << ',';
                if (s.smallest_primitive_root)
                    std::cout << *s.smallest_primitive_root;
                std::cout << ',' << join_u64(reps, ";") << "\n";
            } else {
                std::cout << "n: " << s.n << "\norder: " << s.order << "\nj: " << s.j
                          << "\nlambda: " << s.lambda << "\ncyclic: " << (s.cyclic ? "yes" : "no")
                          << "\ncyclic_semiprime: " << (s.cyclic_semiprime ? "yes" : "no")
                          << "\nprimitive_root_count: " << s.primitive_root_count
                          << "\nsmallest_primitive_root: "
                          << (s.smallest_primitive_root ? std::to_string(*s.smallest_primitive_root)
                                                        : std::string("none"))
                          << "\nelements: {" << join_u64(reps, ", ") << "}\n";
            }
            return;
        }

        // even modulus: representative data only, no classification
        auto red = modstar::even_reduction(n);
        if (format == "json") {
            std::cout << "{\"schema_version\":1,\"n\":" << n << ",\"order\":" << reps.size()
                      << ",\"classified\":false,\"reduces_to\":"
                      << (red ? std::to_string(*red) : std::string("null")) << ",\"elements\":["
                      << join_u64(reps, ",") << "]}\n";
        } else {
            std::cout << "n: " << n << "\norder: " << reps.size() << "\nclassified: no\nreduces_to: "
                      << (red ? std::to_string(*red) : std::string("none")) << "\nelements: {"
                      << join_u64(reps, ", ") << "}\n";
        }
    }
};

struct SeqCmd {
    u64 n{};
    u64 g{2};
    u64 count{0};

    void run() const {
        std::size_t m = count ? count : modstar::pes(n) + 1;
        if (g == 2) {
            auto sig = modstar::schick_signed(n, m);
            auto abs = modstar::schick_absolute(n, m);
            std::cout << "index,signed,absolute\n";
            for (std::size_t i = 0; i < m; ++i)
                std::cout << i + 1 << ',' << sig[i] << ',' << abs[i] << "\n";
        } else {
            auto terms = modstar::generalized_sequence(n, g, m);
            std::cout << "index,term\n";
            for (std::size_t i = 0; i < m; ++i)
                std::cout << i << ',' << terms[i] << "\n";
        }
    }
};

struct SqrtCmd {
    u64 n{};
    u64 b{};
    std::string level{"auto"};
    std::string format{"json"};

    void run() const {
        auto res = modstar::canonical_repr(static_cast<modstar::i64>(b), n);
        int lvl;
        if (level == "auto") {
            lvl = modstar::applicable_level(n);
            if (lvl == 0)
                throw modstar::level_inapplicable_error("no closed-form level applies to this modulus");
        } else {
            lvl = std::stoi(level);
        }
        modstar::ModStarResidue x;
        switch (lvl) {
        case 1: x = modstar::sqrt_level1(res); break;
        case 2: x = modstar::sqrt_level2(res); break;
        case 3: x = modstar::sqrt_level3(res); break;
        default: throw modstar::precondition_error("level must be auto, 1, 2 or 3");
        }
        bool verified = modstar::mul_star(x, x) == res;
        if (format == "json") {
            std::cout << "{\"schema_version\":1,\"n\":" << n << ",\"b\":" << res.repr << ",\"x\":" << x.repr
                      << ",\"level\":" << lvl << ",\"verified\":" << (verified ? "true" : "false") << "}\n";
        } else {
            std::cout << "x = " << x.repr << " (level " << lvl << (verified ? ", verified" : ", UNVERIFIED")
                      << ")\n";
        }
    }
};

struct DensityCmd {
    modstar::SurveyConfig::Kind kind{modstar::SurveyConfig::Kind::prime};
    u64 base{2};
    u64 limit{};
    unsigned partitions{4};
    std::string checkpoint;
    bool resume{false};
    bool verbose{false};

    void run() const {
        modstar::SurveyConfig cfg;
        cfg.kind = kind;
        cfg.base = base;
        cfg.limit = limit;
        cfg.partitions = partitions;
        cfg.checkpoint_path = checkpoint_with_default_dir(checkpoint);
        cfg.resume = resume;
        auto summary = modstar::run_survey(cfg);
        if (verbose)
            std::cerr << "survey finished in " << fmt_double(summary.elapsed_seconds, 3) << " s\n";
        std::cout << summary.to_json() << "\n";
    }
};

struct PolyCmd {
    std::string kind;
    u64 m{};
    u64 n{};
    bool has_m{false};
    bool has_n{false};
    std::string format{"json"};

    void run() const {
        modstar::IntPolynomial p;
        std::string var = "s";
        if (kind == "S" || kind == "P") {
            if (!has_m)
                throw modstar::precondition_error("poly: --m is required for kinds S and P");
            p = kind == "S" ? modstar::s_poly(m) : modstar::p_poly(m);
        } else if (kind == "psi") {
            if (!has_n)
                throw modstar::precondition_error("poly: --n is required for kind psi");
            p = modstar::psi_poly(n);
        } else if (kind == "phi") {
            if (!has_n)
                throw modstar::precondition_error("poly: --n is required for kind phi");
            p = modstar::cyclotomic_poly(n);
            var = "x";
        } else {
            throw modstar::precondition_error("poly: kind must be one of S, P, psi, phi");
        }
        if (format == "json")
            std::cout << p.coefficients_json() << "\n";
        else
            std::cout << p.to_string(var) << "\n";
    }
};

struct ChordsCmd {
    u64 n{};
    std::string product;
    std::string multi;
    bool gauss_sum{false};

    void run() const {
        if (gauss_sum) {
            std::cout << "{\"schema_version\":1,\"n\":" << n
                      << ",\"gauss_sum\":" << modstar::gauss_sum_check(n) << "}\n";
            return;
        }
        if (!product.empty() || !multi.empty()) {
            auto indices = parse_index_list(product.empty() ? multi : product);
            if (!product.empty() && indices.size() != 2)
                throw modstar::precondition_error("chords: --product expects exactly two indices");
            std::vector<modstar::ChordIndex> cs;
            double lhs = 1.0;
            for (u64 j : indices) {
                cs.push_back(modstar::make_chord(n, j));
                lhs *= modstar::chord_value(cs.back());
            }
            auto expansion = modstar::chord_multi_product(cs);
            double rhs = 0.0;
            std::vector<u64> idx;
            for (const auto& c : expansion) {
                rhs += modstar::chord_value(c);
                idx.push_back(c.j);
            }
            std::cout << "{\"schema_version\":1,\"n\":" << n << ",\"indices\":[" << join_u64(indices, ",")
                      << "],\"expansion\":[" << join_u64(idx, ",") << "],\"product_value\":" << fmt_double(lhs)
                      << ",\"sum_value\":" << fmt_double(rhs) << "}\n";
            return;
        }
        // default: representative chord values
        std::vector<std::pair<u64, double>> vals;
        for (u64 k = 1; k <= (n - 1) / 2; ++k) {
            auto c = modstar::chord_index_from_k(k, n);
            vals.emplace_back(c.j, modstar::chord_value(c));
        }
        std::sort(vals.begin(), vals.end());
        std::cout << "{\"schema_version\":1,\"n\":" << n << ",\"chords\":[";
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i)
                std::cout << ',';
            std::cout << "{\"j\":" << vals[i].first << ",\"value\":" << fmt_double(vals[i].second) << "}";
        }
        std::cout << "]}\n";
    }
};

struct DiagramCmd {
    u64 n{};
    std::string out;

    void run() const { modstar::emit_chord_diagram(n, out); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modstar: star-congruence groups, sequences, roots, densities and chord polynomials"};
    app.require_subcommand(1);

    GroupCmd group;
    auto* sc_group = app.add_subcommand("group", "Residue system and group structure for a modulus");
    sc_group->add_option("--n", group.n, "modulus (>= 3)")->required();
    sc_group->add_option("--format", group.format, "plain|json|csv")
        ->check(CLI::IsMember({"plain", "json", "csv"}));

    SeqCmd seq;
    auto* sc_seq = app.add_subcommand("seq", "Schick sequence terms as CSV");
    sc_seq->add_option("--n", seq.n, "odd modulus")->required();
    sc_seq->add_option("--g", seq.g, "base (default 2)");
    sc_seq->add_option("--count", seq.count, "number of terms (default: one full period + 1)");

    SqrtCmd sqrtc;
    auto* sc_sqrt = app.add_subcommand("sqrt", "Closed-form star square root");
    sc_sqrt->add_option("--n", sqrtc.n, "modulus")->required();
    sc_sqrt->add_option("--b", sqrtc.b, "residue to take the root of")->required();
    sc_sqrt->add_option("--level", sqrtc.level, "auto|1|2|3")
        ->check(CLI::IsMember({"auto", "1", "2", "3"}));
    sc_sqrt->add_option("--format", sqrtc.format, "json|plain")->check(CLI::IsMember({"json", "plain"}));

    DensityCmd density;
    auto* sc_density = app.add_subcommand("density", "Primitive-root density over primes");
    sc_density->add_option("--base", density.base, "base a (default 2)");
    sc_density->add_option("--limit", density.limit, "survey primes up to this bound")->required();
    sc_density->add_option("--partitions", density.partitions, "work partitions (default 4)");
    sc_density->add_option("--checkpoint", density.checkpoint, "checkpoint CSV path");
    sc_density->add_flag("--resume", density.resume, "resume from an existing checkpoint");
    sc_density->add_flag("--verbose", density.verbose, "timing to stderr");

    DensityCmd sg_density;
    sg_density.kind = modstar::SurveyConfig::Kind::sg;
    auto* sc_sg = app.add_subcommand("sg-density", "Primitive-root density over Sophie Germain semiprimes");
    sc_sg->add_option("--base", sg_density.base, "prime base b")->required();
    sc_sg->add_option("--limit", sg_density.limit, "survey pairs with p1 up to this bound")->required();
    sc_sg->add_option("--partitions", sg_density.partitions, "work partitions (default 4)");
    sc_sg->add_option("--checkpoint", sg_density.checkpoint, "checkpoint CSV path");
    sc_sg->add_flag("--resume", sg_density.resume, "resume from an existing checkpoint");
    sc_sg->add_flag("--verbose", sg_density.verbose, "timing to stderr");

    PolyCmd poly;
    auto* sc_poly = app.add_subcommand("poly", "Chord, minimal and cyclotomic polynomials");
    sc_poly->add_option("--kind", poly.kind, "S|P|psi|phi")->required()
        ->check(CLI::IsMember({"S", "P", "psi", "phi"}));
    sc_poly->add_option("--m", poly.m, "index for S and P")->each([&poly](const std::string&) { poly.has_m = true; });
    sc_poly->add_option("--n", poly.n, "modulus for psi and phi")->each([&poly](const std::string&) { poly.has_n = true; });
    sc_poly->add_option("--format", poly.format, "json|plain")->check(CLI::IsMember({"json", "plain"}));

    ChordsCmd chords;
    auto* sc_chords = app.add_subcommand("chords", "Chord values and index arithmetic");
    sc_chords->add_option("--n", chords.n, "odd modulus")->required();
    sc_chords->add_option("--product", chords.product, "two indices i,j to multiply");
    sc_chords->add_option("--multi", chords.multi, "comma-separated indices to multiply");
    sc_chords->add_flag("--gauss-sum", chords.gauss_sum, "sum of the representative chords");

    DiagramCmd diagram;
    auto* sc_diagram = app.add_subcommand("diagram", "SVG chord diagram");
    sc_diagram->add_option("--n", diagram.n, "odd modulus, 3..199")->required();
    sc_diagram->add_option("--out", diagram.out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (sc_group->parsed())
            group.run();
        else if (sc_seq->parsed())
            seq.run();
        else if (sc_sqrt->parsed())
            sqrtc.run();
        else if (sc_density->parsed())
            density.run();
        else if (sc_sg->parsed())
            sg_density.run();
        else if (sc_poly->parsed())
            poly.run();
        else if (sc_chords->parsed())
            chords.run();
        else if (sc_diagram->parsed())
            diagram.run();
    } catch (const modstar::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const modstar::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const modstar::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
