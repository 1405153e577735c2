#pragma once

#include "bd3/exterior.hpp"
#include "bd3/rng.hpp"

#include <array>
#include <string>

namespace bd3 {

// One-particle reduced density matrix of a trivector:
//   gamma(a,b) = sum_{j<k} amp(a,j,k) * conj(amp(b,j,k)),
// Hermitian, trace 3 for normalized input, diagonal entries are orbital
// occupation probabilities.
Mat one_rdm(const Trivector& t);

struct NaturalSpectrum {
    std::array<double, 6> lambda; // descending
    Mat orbitals;                 // 6x6 unitary, column i <-> lambda[i]
};

// Eigen-decomposition of the 1RDM.  Within a degenerate cluster (values
// within 1e-8) the eigenvectors are re-orthonormalized by modified
// Gram-Schmidt; only the cluster span is well defined.
NaturalSpectrum natural_spectrum(const Trivector& t);

// Number of 1RDM eigenvalues above tol.  Never 4 for a normalized trivector;
// hitting 4 raises internal_error.
int rank(const Trivector& t, double tol = 1e-10);

struct RepresentabilityReport {
    std::array<double, 3> pair_sums;   // lambda1+lambda6, lambda2+lambda5, lambda3+lambda4
    double inequality_margin;          // lambda5 + lambda6 - lambda4 (>= 0 when ok)
    bool equalities_ok;
    bool inequality_ok;
    bool saturated;                    // lambda4 == lambda5 + lambda6 within tol
};

// Borland-Dennis occupation-number conditions: the three pair sums equal 1
// and lambda4 <= lambda5 + lambda6.  Input is sorted descending first.
RepresentabilityReport check_representability(std::array<double, 6> lambdas, double tol = 1e-9);

// 20 i.i.d. standard complex Gaussian amplitudes, normalized.
Trivector random_trivector(SplitMix64& rng);

} // namespace bd3
