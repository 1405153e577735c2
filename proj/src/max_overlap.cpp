#include "bd3/max_overlap.hpp"

#include "bd3/errors.hpp"
#include "ascent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>

namespace bd3 {

int default_restarts() {
    if (const char* env = std::getenv("BD3_RESTARTS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<int>(std::clamp(v, 1L, 100000L));
    }
    return 32;
}

namespace {

Vec to_vec(std::span<const cplx> s) { return Vec(s.begin(), s.end()); }

// v_a = <e_a ^ b, t>
Vec contract_bivector(const Bivector& b, const Trivector& t) {
    Vec v(6);
    for (int a = 0; a < 6; ++a) {
        cplx s{};
        for (int j = 0; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) {
                const int bjk[2] = {j, k};
                const int ajk[3] = {a, j, k};
                s += std::conj(b.amp(bjk)) * t.amp(ajk);
            }
        v[a] = s;
    }
    return v;
}

// Transition one-body matrix T(m,n) = <bra| m^dagger n |ket> on frame
// coordinates; both arguments are coefficient trivectors.
Mat transition_rdm(const Multivector& bra, const Multivector& ket) {
    Mat t(6, 6);
    for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n) {
            cplx s{};
            for (int j = 0; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k) {
                    const int mjk[3] = {m, j, k};
                    const int njk[3] = {n, j, k};
                    s += std::conj(bra.amp(mjk)) * ket.amp(njk);
                }
            t(m, n) = s;
        }
    return t;
}

// ---------------------------------------------------------------------------
// Slater coordinate ascent
// ---------------------------------------------------------------------------

struct SlaterRun {
    Mat frame; // 6x3
    double overlap = -1.0;
    double worst_gain = 0.0;
    double brueckner = 1.0;
};

double slater_overlap_of(const Mat& f, const Trivector& t) {
    const int cols[3] = {0, 1, 2};
    return std::abs(inner(wedge_cols(f, cols), t));
}

Mat hstack2(const Mat& a, const Mat& b) {
    Mat m(a.rows(), a.cols() + b.cols());
    for (int c = 0; c < a.cols(); ++c) m.set_col(c, a.col(c));
    for (int c = 0; c < b.cols(); ++c) m.set_col(a.cols() + c, b.col(c));
    return m;
}

double max_single_excitation(const Mat& f, const Trivector& t) {
    Mat full = hstack2(f, orthogonal_complement(f));
    Multivector c = express_in_basis(t, full);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (j >= k) continue;
                // two occupied, one virtual
                const int conf[3] = {j, k, 3 + i};
                worst = std::max(worst, std::abs(c.amp(conf)));
            }
    return worst;
}

SlaterRun slater_ascent(const Trivector& t, Mat f) {
    SlaterRun run;
    double ov = slater_overlap_of(f, t);
    for (int sweep = 0; sweep < 500; ++sweep) {
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            Bivector b = wedge(f.col(j), f.col(k));
            Vec v = contract_bivector(b, t);
            // orthogonalize against the fixed pair
            for (int pass = 0; pass < 2; ++pass) {
                axpy(v, -dot(f.col(j), v), f.col(j));
                axpy(v, -dot(f.col(k), v), f.col(k));
            }
            const double n = norm(v);
            if (n < 1e-14) continue;
            scale(v, 1.0 / n);
            f.set_col(i, v);
        }
        const double next = slater_overlap_of(f, t);
        run.worst_gain = std::min(run.worst_gain, next - ov);
        const double gain = next - ov;
        ov = next;
        if (gain < 1e-12 && sweep >= 2) break;
    }
    run.frame = std::move(f);
    run.overlap = ov;
    run.brueckner = max_single_excitation(run.frame, t);
    return run;
}

// ---------------------------------------------------------------------------
// reference-subspace ascent (shared by CIS and CID)
// ---------------------------------------------------------------------------

enum class SubspaceKind { Cis, Cid };

bool keeps(SubspaceKind kind, int in_ref) {
    return kind == SubspaceKind::Cis ? (in_ref >= 2) : (in_ref == 3 || in_ref == 1);
}

double kept_weight(SubspaceKind kind, const Multivector& coeffs) {
    double w = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
        if (keeps(kind, in_ref)) w += std::norm(coeffs[r]);
    }
    return w;
}

struct SubspaceRun {
    Mat frame; // 6x3 reference frame
    double weight = -1.0;
    double worst_gain = 0.0;
};

double subspace_value(SubspaceKind kind, const Trivector& t, const Mat& f) {
    return kept_weight(kind, express_in_basis(t, hstack2(f, orthogonal_complement(f))));
}

SubspaceRun subspace_ascent(SubspaceKind kind, const Trivector& t, Mat f) {
    SubspaceRun run;
    double value = subspace_value(kind, t, f);

    for (int iter = 0; iter < 500; ++iter) {
        Mat g = orthogonal_complement(f);
        Mat full = hstack2(f, g);
        Multivector coeffs = express_in_basis(t, full);

        Multivector phi(6, 3), perp(6, 3);
        std::array<int, 3> idx;
        for (int r = 0; r < coeffs.size(); ++r) {
            comb_unrank(r, 6, 3, idx);
            const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
            (keeps(kind, in_ref) ? phi[r] : perp[r]) = coeffs[r];
        }

        // Steepest-ascent direction over the mixing block X (g_a <- f_i):
        // d(value) = -2 Re sum_ai [ X_ai p_ai - conj(X_ai) r_ai ] with
        // p = T(3+a, i), r = T(i, 3+a), T the transition RDM <phi|..|perp>.
        Mat trdm = transition_rdm(phi, perp);
        Mat xdir(3, 3);
        double gnorm2 = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int i = 0; i < 3; ++i) {
                const cplx p = trdm(3 + a, i);
                const cplx r = trdm(i, 3 + a);
                const double du = 2.0 * (std::real(r) - std::real(p));
                const double dv = 2.0 * (std::imag(p) + std::imag(r));
                xdir(a, i) = {du, dv};
                gnorm2 += du * du + dv * dv;
            }
        if (gnorm2 < 1e-26) break;
        const double gn = std::sqrt(gnorm2);

        auto stepped = [&](double tstep) {
            Mat nf = f;
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 3; ++a) axpy(nf.col(i), xdir(a, i) * (tstep / gn), g.col(a));
            return orthonormalize(nf);
        };
        LineSearchResult ls =
            line_search_max(value, [&](double tt) { return subspace_value(kind, t, stepped(tt)); });
        run.worst_gain = std::min(run.worst_gain, ls.value - value);
        if (ls.value - value < 1e-12) break;
        f = stepped(ls.t);
        value = ls.value;
    }
    run.frame = std::move(f);
    run.weight = value;
    return run;
}

// Deterministic warm starts: the low-rank split frame, then natural orbitals.
Mat warm_start_frame(const Trivector& t, int which) {
    if (which == 0) {
        StrongSplit ss = strong_split(t);
        GeminalForm gf = geminal_canonical(ss.gamma);
        if (!gf.coeff.empty()) {
            Mat m(6, 3);
            m.set_col(0, ss.w);
            m.set_col(1, gf.u[0]);
            m.set_col(2, gf.v[0]);
            Mat q = orthonormalize(m);
            if (q.cols() == 3) return q;
        }
    }
    return natural_spectrum(t).orbitals.first_cols(3);
}

template <typename Run, typename Fn>
Run run_restarts(int restarts, Fn&& single) {
    std::vector<Run> results(restarts);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (restarts >= 4 && hw > 1) {
        std::vector<std::future<Run>> futs;
        futs.reserve(restarts);
        for (int rs = 0; rs < restarts; ++rs)
            futs.push_back(std::async(std::launch::async | std::launch::deferred,
                                      [&, rs] { return single(rs); }));
        for (int rs = 0; rs < restarts; ++rs) results[rs] = futs[rs].get();
    } else {
        for (int rs = 0; rs < restarts; ++rs) results[rs] = single(rs);
    }
    // deterministic reduction: best value, earliest restart wins ties
    int best = 0;
    for (int rs = 1; rs < restarts; ++rs)
        if (results[rs].value_key() > results[best].value_key()) best = rs;
    return results[best];
}

struct SlaterRunKeyed : SlaterRun {
    double value_key() const { return overlap; }
};

struct SubspaceRunKeyed : SubspaceRun {
    double worst_gain_all = 0.0;
    double value_key() const { return weight; }
};

} // namespace

// ---------------------------------------------------------------------------
// public optimizers
// ---------------------------------------------------------------------------

SlaterOverlap max_overlap_slater(const Trivector& t, int restarts, std::uint64_t seed) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("max_overlap_slater: input not normalized");
    restarts = std::max(1, restarts);

    auto single = [&](int rs) -> SlaterRunKeyed {
        Mat f0;
        if (rs == 0) {
            f0 = natural_spectrum(t).orbitals.first_cols(3);
        } else {
            SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(rs));
            f0 = rng.haar_frame(6, 3);
        }
        SlaterRunKeyed run;
        static_cast<SlaterRun&>(run) = slater_ascent(t, std::move(f0));
        return run;
    };
    SlaterRunKeyed best = run_restarts<SlaterRunKeyed>(restarts, single);

    SlaterOverlap out;
    out.orbitals = best.frame;
    const int cols[3] = {0, 1, 2};
    Trivector chi = wedge_cols(best.frame, cols);
    const cplx s = inner(chi, t);
    if (std::abs(s) > 0.0) chi *= s / std::abs(s);
    out.base.approximant = std::move(chi);
    out.base.overlap = std::abs(s);
    out.base.restarts_used = restarts;
    out.base.certificate["brueckner_max_single"] = best.brueckner;
    out.base.certificate["worst_ascent_gain"] = best.worst_gain;
    return out;
}

LowRankOverlap max_overlap_lowrank(const Trivector& t) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("max_overlap_lowrank: input not normalized");

    LowRankOverlap out;
    out.split = strong_split(t);
    const double gnorm = out.split.gamma.norm();
    if (gnorm < 1e-12) throw internal_error("max_overlap_lowrank: empty top geminal");

    out.base.approximant = wedge(out.split.w, out.split.gamma) * cplx{1.0 / gnorm};
    out.base.overlap = gnorm; // = sqrt(lambda_1)
    out.base.restarts_used = 0;

    const NaturalSpectrum ns = natural_spectrum(t);
    out.base.certificate["split_residual"] = out.split.residual;
    out.base.certificate["prop1_defect"] = std::abs(gnorm * gnorm - ns.lambda[0]);
    out.base.certificate["degenerate_top"] = out.split.degenerate_top ? 1.0 : 0.0;
    return out;
}

namespace {

struct SubspaceOutcome {
    Mat frame;
    double weight = 0.0;
    double worst_gain = 0.0;
};

SubspaceOutcome optimize_subspace(SubspaceKind kind, const Trivector& t, int restarts, std::uint64_t seed) {
    restarts = std::max(1, restarts);
    auto single = [&](int rs) -> SubspaceRunKeyed {
        Mat f0 = (rs <= 1) ? warm_start_frame(t, rs)
                           : SplitMix64::substream(seed, static_cast<std::uint64_t>(rs)).haar_frame(6, 3);
        SubspaceRunKeyed run;
        static_cast<SubspaceRun&>(run) = subspace_ascent(kind, t, std::move(f0));
        return run;
    };
    SubspaceRunKeyed best = run_restarts<SubspaceRunKeyed>(restarts, single);
    return {best.frame, best.weight, best.worst_gain};
}

// Normalized projection of t onto the kept subspace of the frame.
Trivector projection_state(SubspaceKind kind, const Trivector& t, const Mat& f, double* weight_out) {
    Mat full = hstack2(f, orthogonal_complement(f));
    Multivector coeffs = express_in_basis(t, full);
    Trivector phi(6, 3);
    std::array<int, 3> idx;
    double w = 0.0;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
        if (!keeps(kind, in_ref)) continue;
        w += std::norm(coeffs[r]);
        phi += wedge_cols(full, idx) * coeffs[r];
    }
    if (weight_out) *weight_out = w;
    if (w > 0.0) phi *= cplx{1.0 / std::sqrt(w)};
    return phi;
}

} // namespace

CisOverlap max_overlap_cis(const Trivector& t, int restarts, std::uint64_t seed) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("max_overlap_cis: input not normalized");
    SubspaceOutcome opt = optimize_subspace(SubspaceKind::Cis, t, restarts, seed);

    CisOverlap out;
    out.ref_frame = opt.frame;
    double w = 0.0;
    Trivector chi = projection_state(SubspaceKind::Cis, t, opt.frame, &w);
    out.base.overlap = std::sqrt(w);
    out.base.approximant = chi;
    out.base.restarts_used = std::max(1, restarts);
    out.chi_canonical = cis_canonical(chi, opt.frame);

    // Certificate: expansion of t on the canonical orbitals of chi keeps only
    // the five-term diagram; record the worst stray coefficients by group.
    Multivector c = express_in_basis(t, out.chi_canonical.basis.cols);
    const std::array<std::array<int, 3>, 5> allowed = {{{0, 1, 2}, {1, 2, 3}, {0, 2, 4}, {0, 1, 5}, {3, 4, 5}}};
    const std::array<std::array<int, 3>, 3> c_rows = {{{2, 3, 4}, {1, 3, 5}, {0, 4, 5}}};
    const std::array<std::array<int, 3>, 6> mixed = {
        {{0, 3, 4}, {0, 3, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 5}, {2, 4, 5}}};

    auto max_over = [&](auto confs) {
        double m = 0.0;
        for (const auto& conf : confs) m = std::max(m, std::abs(c.amp(conf)));
        return m;
    };
    double stray_singles = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < c.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        bool in_allowed = std::find(allowed.begin(), allowed.end(), idx) != allowed.end();
        bool in_c = std::find(c_rows.begin(), c_rows.end(), idx) != c_rows.end();
        bool in_mixed = std::find(mixed.begin(), mixed.end(), idx) != mixed.end();
        if (!in_allowed && !in_c && !in_mixed) stray_singles = std::max(stray_singles, std::abs(c[r]));
    }

    Trivector recon(6, 3);
    for (const auto& conf : allowed) recon += wedge_cols(out.chi_canonical.basis.cols, conf) * c.amp(conf);

    out.base.certificate["c_rows_max"] = max_over(c_rows);
    out.base.certificate["mixed_doubles_max"] = max_over(mixed);
    out.base.certificate["stray_singles_max"] = stray_singles;
    out.base.certificate["expansion_residual"] = (t - recon).norm();
    out.base.certificate["worst_ascent_gain"] = opt.worst_gain;
    return out;
}

CidOverlap max_overlap_cid(const Trivector& t, int restarts, std::uint64_t seed) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("max_overlap_cid: input not normalized");
    SubspaceOutcome opt = optimize_subspace(SubspaceKind::Cid, t, restarts, seed);

    CidOverlap out;
    out.ref_frame = opt.frame;
    double w = 0.0;
    Trivector chi = projection_state(SubspaceKind::Cid, t, opt.frame, &w);
    out.base.overlap = std::sqrt(w);
    out.base.approximant = chi;
    out.base.restarts_used = std::max(1, restarts);
    out.chi_canonical = cid_canonical(chi, opt.frame);

    // Proposition-2 certificate: only the four canonical rows and their duals
    // may appear in t's expansion on the canonical orbitals.
    Multivector c = express_in_basis(t, out.chi_canonical.basis.cols);
    double excluded = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < c.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        // single-occupancy on pairs (i, 3+i): exactly one of {i, 3+i} each
        bool single_occ = true;
        for (int p = 0; p < 3; ++p) {
            const int hits = static_cast<int>(std::count(idx.begin(), idx.end(), p)) +
                             static_cast<int>(std::count(idx.begin(), idx.end(), 3 + p));
            if (hits != 1) single_occ = false;
        }
        if (!single_occ) excluded = std::max(excluded, std::abs(c[r]));
    }
    out.base.certificate["excluded_max"] = excluded;
    out.base.certificate["worst_ascent_gain"] = opt.worst_gain;
    return out;
}

// ---------------------------------------------------------------------------
// theorem-backed expansions
// ---------------------------------------------------------------------------

CIExpansion expansion_from_slater(const Trivector& t, const SlaterOverlap& chi) {
    const double singles = max_single_excitation(chi.orbitals, t);
    if (singles > 1e-7)
        throw precondition_error("expansion_from_slater: Brueckner certificate violated (max single " +
                                 std::to_string(singles) + ")");
    CIExpansion e = svd_reduce_singles(t, orthogonal_complement(chi.orbitals));
    // g1^g2^g3 equals the approximant: both have nonnegative overlap with t
    // and span the same line.
    return e;
}

CIExpansion expansion_from_cis(const Trivector& t, const CisOverlap& chi) {
    const auto& cert = chi.base.certificate;
    const double worst = std::max(cert.at("c_rows_max"),
                                  std::max(cert.at("mixed_doubles_max"), cert.at("stray_singles_max")));
    if (worst > 1e-6)
        throw precondition_error("expansion_from_cis: certificate violated (stray coefficient " +
                                 std::to_string(worst) + ")");
    if (rank(t) == 6 && rank(chi.base.approximant) != 6)
        throw precondition_error("expansion_from_cis: full-rank target but rank-deficient approximant");

    CIExpansion e;
    e.basis = chi.chi_canonical.basis;
    e.shape = Shape::CIS5;
    Multivector c = express_in_basis(t, e.basis.cols);
    const std::array<std::array<int, 3>, 5> rows = {{{0, 1, 2}, {1, 2, 3}, {0, 2, 4}, {0, 1, 5}, {3, 4, 5}}};
    for (const auto& conf : rows) e.terms.push_back({conf, c.amp(conf)});
    return e;
}

} // namespace bd3
