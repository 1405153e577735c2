// bd3: command-line interface for the Borland-Dennis three-fermion toolkit.
// Talks to the core library exclusively through the C API in bd3/bd3_c.h.

#include "bd3/bd3_c.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

// exit codes: 0 ok, 1 I/O or parse, 2 mathematical precondition, 3 internal
int exit_code_for(bd3_status st) {
    switch (st) {
        case BD3_OK: return 0;
        case BD3_ERR_PRECONDITION: return 2;
        case BD3_ERR_INTERNAL: return 3;
        default: return 1;
    }
}

[[noreturn]] void die(bd3_status st) {
    std::fprintf(stderr, "error: %s\n", bd3_last_error());
    std::exit(exit_code_for(st));
}

void check(bd3_status st) {
    if (st != BD3_OK) die(st);
}

std::string fmt(double x, int digits = 12) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

std::string fmt_complex(double re, double im, int digits = 12) {
    const char sign = (im < 0.0) ? '-' : '+';
    return fmt(re, digits) + " " + sign + " " + fmt(im < 0.0 ? -im : im, digits) + "i";
}

struct StateHandle {
    bd3_state* p = nullptr;
    ~StateHandle() { bd3_state_free(p); }
};
struct QStateHandle {
    bd3_qstate* p = nullptr;
    ~QStateHandle() { bd3_qstate_free(p); }
};
struct ExpansionHandle {
    bd3_expansion* p = nullptr;
    ~ExpansionHandle() { bd3_expansion_free(p); }
};
struct OverlapHandle {
    bd3_overlap* p = nullptr;
    ~OverlapHandle() { bd3_overlap_free(p); }
};

void print_expansion(const bd3_expansion* e, const bd3_state* source) {
    std::printf("shape: %s\n", bd3_expansion_shape(e));

    // X/O configuration diagram, one row per term.
    std::printf(" ");
    for (int c = 0; c < 6; ++c) std::printf(" %3s", bd3_expansion_label(e, c));
    std::printf("   coefficient\n");
    const int n = bd3_expansion_term_count(e);
    for (int i = 0; i < n; ++i) {
        int idx[3];
        double re = 0.0, im = 0.0;
        bd3_expansion_term(e, i, idx, &re, &im);
        std::printf(" ");
        for (int c = 1; c <= 6; ++c) {
            const bool occ = (idx[0] == c || idx[1] == c || idx[2] == c);
            std::printf(" %3s", occ ? "X" : "O");
        }
        std::printf("   %s\n", fmt_complex(re, im).c_str());
    }
    if (source) std::printf("reconstruction residual: %s\n", fmt(bd3_expansion_residual(e, source)).c_str());

    // Machine-readable block mirrors the table.
    double re36[36], im36[36];
    bd3_expansion_basis(e, re36, im36);
    std::printf("json: {\"shape\": \"%s\", \"terms\": [", bd3_expansion_shape(e));
    for (int i = 0; i < n; ++i) {
        int idx[3];
        double re = 0.0, im = 0.0;
        bd3_expansion_term(e, i, idx, &re, &im);
        std::printf("%s{\"indices\": [%d, %d, %d], \"re\": %s, \"im\": %s}", i ? ", " : "", idx[0], idx[1],
                    idx[2], fmt(re, 17).c_str(), fmt(im, 17).c_str());
    }
    std::printf("], \"basis\": [");
    for (int r = 0; r < 6; ++r) {
        std::printf("%s[", r ? ", " : "");
        for (int c = 0; c < 6; ++c)
            std::printf("%s{\"re\": %s, \"im\": %s}", c ? ", " : "", fmt(re36[r * 6 + c], 17).c_str(),
                        fmt(im36[r * 6 + c], 17).c_str());
        std::printf("]");
    }
    std::printf("]}\n");
}

int cmd_analyze(const std::string& file, int restarts, uint64_t seed) {
    StateHandle s;
    check(bd3_state_load(file.c_str(), &s.p));

    bd3_analysis a;
    check(bd3_analyze(s.p, &a));

    std::printf("norm: %s\n", fmt(bd3_state_norm(s.p)).c_str());
    std::printf("occupations:");
    for (double l : a.occupations) std::printf(" %s", fmt(l).c_str());
    std::printf("\n");
    std::printf("pair sums (l1+l6, l2+l5, l3+l4): %s %s %s  [%s]\n", fmt(a.pair_sums[0]).c_str(),
                fmt(a.pair_sums[1]).c_str(), fmt(a.pair_sums[2]).c_str(), a.equalities_ok ? "ok" : "violated");
    std::printf("inequality margin (l5+l6-l4): %s  [%s%s]\n", fmt(a.inequality_margin).c_str(),
                a.inequality_ok ? "ok" : "violated", a.saturated ? ", saturated" : "");
    std::printf("rank: %d\n", a.rank);
    std::printf("invariants: M1 = %s, sym = (%s, %s, %s), |hyperdet|^2 = %s\n", fmt(a.m1).c_str(),
                fmt(a.sym1).c_str(), fmt(a.sym2).c_str(), fmt(a.sym3).c_str(), fmt(a.hyperdet_mod2).c_str());
    static const char* kGl6[] = {"Separable", "Biseparable", "W", "GHZ"};
    std::printf("gl6 class: %s\n", kGl6[a.gl6_class]);

    unsigned mask = 0;
    check(bd3_detect_types(s.p, restarts, seed, &mask));
    std::printf("types:");
    for (int k = 0; bd3_tag_name(k); ++k)
        if (mask & (1u << k)) std::printf(" %s", bd3_tag_name(k));
    std::printf("\n");
    if (a.borderline) std::printf("note: borderline classification quantities\n");
    return 0;
}

int cmd_canonical(const std::string& file, const std::string& form, int restarts, uint64_t seed,
                  const std::string& out) {
    StateHandle s;
    check(bd3_state_load(file.c_str(), &s.p));
    ExpansionHandle e;
    check(bd3_canonical(s.p, form.c_str(), restarts, seed, &e.p));
    print_expansion(e.p, s.p);
    if (!out.empty()) {
        check(bd3_expansion_save(e.p, out.c_str()));
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int cmd_maxoverlap(const std::string& file, const std::string& klass, int restarts, uint64_t seed) {
    OverlapHandle o;
    StateHandle s;
    QStateHandle q;
    if (klass == "type4a") {
        check(bd3_qstate_load(file.c_str(), &q.p));
        check(bd3_maxoverlap_type4a(q.p, restarts, seed, &o.p));
    } else {
        check(bd3_state_load(file.c_str(), &s.p));
        check(bd3_maxoverlap(s.p, klass.c_str(), restarts, seed, &o.p));
    }

    const double ov = bd3_overlap_value(o.p);
    std::printf("class: %s\n", klass.c_str());
    std::printf("overlap: %s\n", fmt(ov).c_str());
    std::printf("overlap^2: %s\n", fmt(ov * ov).c_str());
    std::printf("restarts: %d\n", bd3_overlap_restarts(o.p));
    for (int i = 0; i < bd3_overlap_cert_count(o.p); ++i)
        std::printf("certificate %s: %s\n", bd3_overlap_cert_name(o.p, i),
                    fmt(bd3_overlap_cert_value(o.p, i)).c_str());

    bd3_expansion* raw = nullptr;
    if (klass == "slater" || klass == "cis" || klass == "cid") {
        check(bd3_overlap_expansion(o.p, &raw));
        ExpansionHandle e;
        e.p = raw;
        std::printf("induced expansion:\n");
        print_expansion(e.p, s.p);
    }
    return 0;
}

int cmd_random(uint64_t seed, const std::string& tag, const std::string& out) {
    StateHandle s;
    check(bd3_state_random(seed, tag.empty() ? nullptr : tag.c_str(), &s.p));
    check(bd3_state_save(s.p, out.c_str()));
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_verify(const std::string& file, int restarts, uint64_t seed) {
    StateHandle s;
    check(bd3_state_load(file.c_str(), &s.p));
    std::vector<char> report(1 << 16);
    int failures = 0;
    check(bd3_verify(s.p, restarts, seed, report.data(), static_cast<int>(report.size()), &failures));
    std::printf("%s", report.data());
    if (failures > 0) {
        std::printf("verify: %d check(s) failed\n", failures);
        return 3;
    }
    std::printf("verify: all checks passed\n");
    return 0;
}

int cmd_embed(const std::string& file, const std::string& out) {
    QStateHandle q;
    check(bd3_qstate_load(file.c_str(), &q.p));
    StateHandle s;
    check(bd3_embed(q.p, &s.p));

    double re[20], im[20];
    check(bd3_state_amplitudes(s.p, re, im));
    std::printf("embedded state amplitudes (lexicographic triples):\n");
    static const int triples[20][3] = {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5},
                                       {1, 3, 6}, {1, 4, 5}, {1, 4, 6}, {1, 5, 6}, {2, 3, 4}, {2, 3, 5},
                                       {2, 3, 6}, {2, 4, 5}, {2, 4, 6}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6},
                                       {3, 5, 6}, {4, 5, 6}};
    for (int i = 0; i < 20; ++i)
        if (re[i] != 0.0 || im[i] != 0.0)
            std::printf("  (%d,%d,%d): %s\n", triples[i][0], triples[i][1], triples[i][2],
                        fmt_complex(re[i], im[i]).c_str());
    if (!out.empty()) {
        check(bd3_state_save(s.p, out.c_str()));
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int cmd_unembed(const std::string& file, bool natural, const std::string& out) {
    StateHandle s;
    check(bd3_state_load(file.c_str(), &s.p));
    QStateHandle q;
    check(bd3_unembed(s.p, natural ? 1 : 0, &q.p));

    double re[8], im[8];
    check(bd3_qstate_amplitudes(q.p, re, im));
    std::printf("qubit amplitudes:\n");
    for (int b3 = 0; b3 < 2; ++b3)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b1 = 0; b1 < 2; ++b1) {
                const int slot = b1 + 2 * b2 + 4 * b3;
                if (re[slot] != 0.0 || im[slot] != 0.0)
                    std::printf("  |%d%d%d>: %s\n", b1, b2, b3, fmt_complex(re[slot], im[slot]).c_str());
            }
    if (!out.empty()) {
        check(bd3_qstate_save(q.p, out.c_str()));
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave functions of three fermions in six orbitals: analysis, canonical CI expansions, "
                 "max-overlap approximations, and the 3-qubit correspondence."};
    app.require_subcommand(1);

    int restarts = bd3_default_restarts();
    uint64_t seed = 0;
    std::string file, out, form, klass, tag;
    bool natural = false;

    auto* analyze = app.add_subcommand("analyze", "occupations, invariants, and class tags of a state");
    analyze->add_option("file", file)->required();
    analyze->add_option("--restarts", restarts);
    analyze->add_option("--seed", seed);

    auto* canonical = app.add_subcommand("canonical", "canonical CI expansion of a state");
    canonical->add_option("file", file)->required();
    canonical->add_option("--form", form)
        ->required()
        ->check(CLI::IsMember({"bd", "lone", "cis", "cid", "slater5", "cis5"}));
    canonical->add_option("--restarts", restarts);
    canonical->add_option("--seed", seed);
    canonical->add_option("-o,--output", out, "write the expansion (basis + coefficients) as a state file");

    auto* maxoverlap = app.add_subcommand("maxoverlap", "max-overlap approximation within a class");
    maxoverlap->add_option("file", file)->required();
    maxoverlap->add_option("--class", klass)
        ->required()
        ->check(CLI::IsMember({"slater", "lowrank", "cis", "cid", "type4a"}));
    maxoverlap->add_option("--restarts", restarts);
    maxoverlap->add_option("--seed", seed);

    auto* random = app.add_subcommand("random", "write a seeded random state");
    random->add_option("--seed", seed)->required();
    random->add_option("--class", tag, "class tag (Type1..Type3b, CIS, CID, OrthoW, OrthoGHZ, LowRank)");
    random->add_option("-o,--output", out)->required();

    auto* verify = app.add_subcommand("verify", "run the invariant suite on one state");
    verify->add_option("file", file)->required();
    verify->add_option("--restarts", restarts);
    verify->add_option("--seed", seed);

    auto* embed = app.add_subcommand("embed", "embed a 3-qubit state file");
    embed->add_option("file", file)->required();
    embed->add_option("-o,--output", out);

    auto* unembed = app.add_subcommand("unembed", "read a state back as a 3-qubit state");
    unembed->add_option("file", file)->required();
    unembed->add_flag("--natural", natural, "use the state's own paired natural-orbital basis");
    unembed->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    if (analyze->parsed()) return cmd_analyze(file, restarts, seed);
    if (canonical->parsed()) return cmd_canonical(file, form, restarts, seed, out);
    if (maxoverlap->parsed()) return cmd_maxoverlap(file, klass, restarts, seed);
    if (random->parsed()) return cmd_random(seed, tag, out);
    if (verify->parsed()) return cmd_verify(file, restarts, seed);
    if (embed->parsed()) return cmd_embed(file, out);
    if (unembed->parsed()) return cmd_unembed(file, natural, out);
    return 1;
}
