#include "bd3/verify.hpp"

#include "bd3/classify.hpp"
#include "bd3/max_overlap.hpp"
#include "bd3/qubit3.hpp"
#include "bd3/statefile.hpp"

#include <algorithm>
#include <cmath>

namespace bd3 {

std::string VerifyReport::text() const {
    std::string s;
    for (const auto& c : checks)
        s += std::string(c.ok ? "ok   " : "FAIL ") + c.name + " (" + format_sig(c.value, 6) + " vs " +
             format_sig(c.threshold, 6) + ")\n";
    return s;
}

namespace {

void push(VerifyReport& rep, const std::string& name, double value, double threshold, bool ok) {
    rep.checks.push_back({name, ok, value, threshold});
    if (!ok) ++rep.failures;
}

void push_leq(VerifyReport& rep, const std::string& name, double value, double threshold) {
    push(rep, name, value, threshold, value <= threshold);
}

} // namespace

VerifyReport verify_state(const Trivector& t, int restarts, std::uint64_t seed) {
    VerifyReport rep;

    push_leq(rep, "norm deviation", std::abs(t.norm() - 1.0), 1e-10);

    const NaturalSpectrum ns = natural_spectrum(t);
    const RepresentabilityReport rr = check_representability(ns.lambda);
    double eq = 0.0;
    for (double s : rr.pair_sums) eq = std::max(eq, std::abs(s - 1.0));
    push_leq(rep, "occupation pair sums", eq, 1e-9);
    push(rep, "occupation inequality", rr.inequality_margin, -1e-9, rr.inequality_margin >= -1e-9);

    CIExpansion bd = bd_expansion(t);
    push(rep, "bd term count", bd.nonzero_terms(), 8, bd.nonzero_terms() <= 8);
    push_leq(rep, "bd reconstruction residual", bd.residual(t), 1e-9);
    Mat gb = bd.basis.cols.adjoint() * one_rdm(t) * bd.basis.cols;
    push_leq(rep, "bd natural-orbital offdiagonal", max_abs_offdiag(gb), 1e-9);

    CIExpansion lone = lone_orbital(t);
    push_leq(rep, "lone-orbital residual", lone.residual(t), 1e-9);

    LowRankOverlap lr = max_overlap_lowrank(t);
    push_leq(rep, "low-rank overlap^2 vs lambda1", std::abs(lr.base.overlap * lr.base.overlap - ns.lambda[0]),
             1e-10);
    push_leq(rep, "low-rank split residual", lr.split.residual, 1e-9);

    SlaterOverlap so = max_overlap_slater(t, restarts, seed);
    push_leq(rep, "brueckner max single", so.base.certificate.at("brueckner_max_single"), 1e-8);
    CIExpansion slater5 = expansion_from_slater(t, so);
    push_leq(rep, "slater five-term residual", slater5.residual(t), 1e-8);
    double lead = 0.0;
    for (const auto& term : slater5.terms)
        if (term.orbitals == std::array<int, 3>{3, 4, 5}) lead = std::abs(term.coeff);
    push_leq(rep, "slater leading coefficient defect", std::abs(lead - so.base.overlap), 1e-8);

    CisOverlap co = max_overlap_cis(t, restarts, seed);
    CIExpansion cis5 = expansion_from_cis(t, co);
    push_leq(rep, "cis five-term residual", cis5.residual(t), 1e-8);
    double norm5 = 0.0;
    for (const auto& term : cis5.terms) norm5 += std::norm(term.coeff);
    push_leq(rep, "cis five-term parseval defect", std::abs(norm5 - 1.0), 1e-8);
    push_leq(rep, "cis mixed-double certificate", co.base.certificate.at("mixed_doubles_max"), 1e-7);

    push(rep, "overlap nesting slater<=lowrank", so.base.overlap, lr.base.overlap + 1e-9,
         so.base.overlap <= lr.base.overlap + 1e-9);
    push(rep, "overlap nesting lowrank<=cis", lr.base.overlap, co.base.overlap + 1e-9,
         lr.base.overlap <= co.base.overlap + 1e-9);
    push(rep, "overlap nesting cis<=1", co.base.overlap, 1.0 + 1e-9, co.base.overlap <= 1.0 + 1e-9);

    const double hmod = hyperdet_modulus(t);
    double hdrift = 0.0;
    for (int k = 0; k < 3; ++k) {
        SplitMix64 rng = SplitMix64::substream(seed ^ 0x5FDCu, k);
        Trivector scrambled = change_basis(t, rng.haar_unitary(6));
        hdrift = std::max(hdrift, std::abs(hyperdet_modulus(scrambled) - hmod));
    }
    push_leq(rep, "hyperdet scramble drift", hdrift, 1e-8);

    const bool cis_by_hyperdet = hmod * hmod <= 1e-9;
    const bool cis_by_overlap = co.base.overlap >= 1.0 - 1e-7;
    push(rep, "cis iff zero hyperdet", cis_by_hyperdet == cis_by_overlap ? 0.0 : 1.0, 0.0,
         cis_by_hyperdet == cis_by_overlap);

    return rep;
}

} // namespace bd3
