#include "bd3/classify.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace bd3 {

namespace {

constexpr double kHyperdetTol = 1e-9; // on squared-modulus quantities
constexpr double kOverlapTol = 1e-8;  // on overlaps

int distinct_occupations(const std::array<double, 6>& l, double tol = 1e-8) {
    int distinct = 1;
    for (int i = 1; i < 6; ++i)
        if (l[i - 1] - l[i] > tol) ++distinct;
    return distinct;
}

// Bitstring of a single-occupancy BD configuration (pairs (0,5),(1,4),(2,3)).
int config_bits(const std::array<int, 3>& conf) {
    int bits = 0;
    for (int p = 0; p < 3; ++p) {
        const int hi = p, lo = 5 - p;
        if (std::find(conf.begin(), conf.end(), lo) != conf.end()) bits |= 1 << p;
        else if (std::find(conf.begin(), conf.end(), hi) == conf.end()) return -1;
    }
    return bits;
}

} // namespace

std::string gl6_name(Gl6Class c) {
    switch (c) {
        case Gl6Class::Separable: return "Separable";
        case Gl6Class::Biseparable: return "Biseparable";
        case Gl6Class::W: return "W";
        default: return "GHZ";
    }
}

std::string tag_name(TypeTag t) {
    switch (t) {
        case TypeTag::Type1: return "Type1";
        case TypeTag::Type2a: return "Type2a";
        case TypeTag::Type2b: return "Type2b";
        case TypeTag::Type3a: return "Type3a";
        case TypeTag::Type3b: return "Type3b";
        case TypeTag::CIS: return "CIS";
        case TypeTag::CID: return "CID";
        case TypeTag::OrthoW: return "OrthoW";
        case TypeTag::OrthoGHZ: return "OrthoGHZ";
        default: return "LowRank";
    }
}

std::optional<TypeTag> tag_from_name(const std::string& name) {
    for (TypeTag t : {TypeTag::Type1, TypeTag::Type2a, TypeTag::Type2b, TypeTag::Type3a, TypeTag::Type3b,
                      TypeTag::CIS, TypeTag::CID, TypeTag::OrthoW, TypeTag::OrthoGHZ, TypeTag::LowRank}) {
        if (tag_name(t) == name) return t;
    }
    if (name == "Slater") return TypeTag::Type1;
    if (name == "GHZ") return TypeTag::OrthoGHZ;
    if (name == "W") return TypeTag::OrthoW;
    return std::nullopt;
}

InvariantReport invariants(const Trivector& t) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("invariants: input not normalized");

    InvariantReport rep;
    rep.m1 = t.norm() * t.norm();

    const NaturalSpectrum ns = natural_spectrum(t);
    const double p1 = ns.lambda[0] * ns.lambda[5];
    const double p2 = ns.lambda[1] * ns.lambda[4];
    const double p3 = ns.lambda[2] * ns.lambda[3];
    rep.sym123 = {p1 + p2 + p3, p1 * p2 + p1 * p3 + p2 * p3, p1 * p2 * p3};

    const double hmod = hyperdet_modulus(t);
    rep.hyperdet_mod2 = hmod * hmod;

    int r = 0;
    for (double l : ns.lambda)
        if (l > 1e-10) ++r;
    rep.rank = r;

    if (r == 3) rep.gl6 = Gl6Class::Separable;
    else if (r <= 5) rep.gl6 = Gl6Class::Biseparable;
    else rep.gl6 = rep.hyperdet_mod2 > kHyperdetTol ? Gl6Class::GHZ : Gl6Class::W;

    rep.borderline = (rep.hyperdet_mod2 > 0.1 * kHyperdetTol && rep.hyperdet_mod2 < 10.0 * kHyperdetTol);
    for (double l : ns.lambda)
        if (l > 1e-11 && l < 1e-9) rep.borderline = true;
    return rep;
}

Gl6Class gl6_class(const Trivector& t) { return invariants(t).gl6; }

TypeTags detect_types(const Trivector& t, int restarts, std::uint64_t seed) {
    if (std::abs(t.norm() - 1.0) > 1e-8) throw precondition_error("detect_types: input not normalized");

    TypeTags tags;
    const NaturalSpectrum ns = natural_spectrum(t);
    int r = 0;
    for (double l : ns.lambda)
        if (l > 1e-10) ++r;

    if (r <= 3) tags.insert(TypeTag::Type1);
    if (r <= 5) {
        tags.insert(TypeTag::Type2a);
        tags.insert(TypeTag::LowRank);
    }

    CIExpansion bd = bd_expansion(t);
    const int nterms = bd.nonzero_terms();

    // Ortho-GHZ: two complementary configurations; the occupation spectrum
    // then has at most two distinct values.
    if (nterms == 2 && distinct_occupations(ns.lambda) <= 2) {
        const int b0 = config_bits(bd.terms[0].orbitals);
        const int b1 = config_bits(bd.terms[1].orbitals);
        if (b0 >= 0 && b1 >= 0 && (b0 ^ b1) == 0b111) {
            tags.insert(TypeTag::Type2b);
            tags.insert(TypeTag::OrthoGHZ);
        }
    }

    // Type 3b: three configurations with pairwise qubit distances {1, 2, 3}.
    if (nterms == 3) {
        std::array<int, 3> bits{};
        bool ok = true;
        int k = 0;
        for (const auto& term : bd.terms) {
            const int b = config_bits(term.orbitals);
            if (b < 0) ok = false;
            else bits[k++] = b;
        }
        if (ok) {
            std::array<int, 3> dists = {std::popcount(static_cast<unsigned>(bits[0] ^ bits[1])),
                                        std::popcount(static_cast<unsigned>(bits[0] ^ bits[2])),
                                        std::popcount(static_cast<unsigned>(bits[1] ^ bits[2]))};
            std::sort(dists.begin(), dists.end());
            if (dists == std::array<int, 3>{1, 2, 3}) tags.insert(TypeTag::Type3b);
        }
    }

    const double hmod = hyperdet_modulus(t);
    if (hmod * hmod <= kHyperdetTol) tags.insert(TypeTag::CIS);

    CidOverlap cid = max_overlap_cid(t, restarts, seed);
    const bool is_cid = cid.base.overlap > 1.0 - kOverlapTol;
    if (is_cid) {
        tags.insert(TypeTag::CID);
        // Degenerate CID (a vanishing canonical coefficient) leaves a
        // three-row expansion, i.e. membership in some R ^ R ^ Rperp.
        double a4 = 0.0;
        if (!cid.chi_canonical.terms.empty()) a4 = std::abs(cid.chi_canonical.terms.back().coeff);
        if (a4 * a4 <= kHyperdetTol) {
            tags.insert(TypeTag::Type3a);
            tags.insert(TypeTag::OrthoW);
        }
    }
    return tags;
}

InvariantReport full_report(const Trivector& t, int restarts, std::uint64_t seed) {
    InvariantReport rep = invariants(t);
    rep.tags = detect_types(t, restarts, seed);
    return rep;
}

} // namespace bd3
