#pragma once

// Test-only oracles, kept independent of the implementation paths they check:
// closed-form 3x3 Hermitian eigenvalues (Cardano), and brute-force
// sample-and-polish maximizers for the overlap problems driven by std::mt19937_64.

#include "bd3/exterior.hpp"
#include "bd3/qubit3.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace bd3::oracle {

// Eigenvalues (descending) of a 3x3 Hermitian matrix via the characteristic
// cubic and Cardano's trigonometric formula.
std::array<double, 3> hermitian3_eigs(const Mat& h);

// Best Slater-determinant overlap by random sampling plus stochastic polish.
double max_slater_overlap(const Trivector& t, int samples, std::uint64_t seed);

// Best CIS overlap (over 3-dimensional reference spaces).
double max_cis_overlap(const Trivector& t, int samples, std::uint64_t seed);

// Best Type-4a overlap for a 3-qubit state.
double max_type4a_overlap(const ThreeQubitState& q, int samples, std::uint64_t seed);

} // namespace bd3::oracle
