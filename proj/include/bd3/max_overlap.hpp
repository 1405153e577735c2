#pragma once

#include "bd3/canonical.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace bd3 {

struct OverlapResult {
    Trivector approximant; // normalized, phase fixed so the overlap is real positive
    double overlap = 0.0;
    int restarts_used = 0;
    std::map<std::string, double> certificate;
};

// Default restart count, overridable via the BD3_RESTARTS environment
// variable (clamped to [1, 100000]).
int default_restarts();

struct SlaterOverlap {
    OverlapResult base;
    Mat orbitals; // 6x3 occupied frame of the approximant
};

// Coordinate ascent over the three orbitals with multi-restart; the result
// satisfies the Brueckner conditions (all nine single-excitation
// coefficients small), recorded in the certificate.
SlaterOverlap max_overlap_slater(const Trivector& t, int restarts = 32, std::uint64_t seed = 0);

struct LowRankOverlap {
    OverlapResult base;
    StrongSplit split; // t = w ^ gamma + w' ^ gamma', chi* = w ^ gamma / |gamma|
};

// Exact, non-iterative: overlap^2 equals the top natural occupation number.
LowRankOverlap max_overlap_lowrank(const Trivector& t);

struct CisOverlap {
    OverlapResult base;
    Mat ref_frame;             // 6x3 frame of the optimal reference space
    CIExpansion chi_canonical; // canonical CIS form of the approximant
};

// Ascent over 3-dimensional reference spaces maximizing the projection onto
// the reference-plus-singles subspace.  The certificate records the residual
// five-term structure of the target on the optimizer's canonical orbitals.
CisOverlap max_overlap_cis(const Trivector& t, int restarts = 32, std::uint64_t seed = 0);

struct CidOverlap {
    OverlapResult base;
    Mat ref_frame;
    CIExpansion chi_canonical; // canonical CID form of the approximant
};

// Same machinery over the reference-plus-doubles subspace.  At the optimum
// the target is supported on the four canonical rows and their duals; the
// certificate records the largest of the twelve excluded coefficients.
CidOverlap max_overlap_cid(const Trivector& t, int restarts = 32, std::uint64_t seed = 0);

// Five-term expansion whose last row is the max-overlap Slater determinant
// with coefficient equal to the maximum overlap.  Errors when chi fails its
// Brueckner certificate on t.
CIExpansion expansion_from_slater(const Trivector& t, const SlaterOverlap& chi);

// Five-term expansion s*(canonical CIS rows) + D g1^g2^g3 with
// s = <chi*, t>.  Errors when chi fails its certificate on t.
CIExpansion expansion_from_cis(const Trivector& t, const CisOverlap& chi);

} // namespace bd3
