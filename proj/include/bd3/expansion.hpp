#pragma once

#include "bd3/exterior.hpp"

#include <array>
#include <string>
#include <vector>

namespace bd3 {

// Ordered orthonormal basis of C^6 with display labels.
struct OrbitalBasis {
    Mat cols;                           // 6x6, column i = orbital i
    std::array<std::string, 6> labels;

    OrbitalBasis();
    explicit OrbitalBasis(Mat m, std::array<std::string, 6> lab = default_labels());

    static std::array<std::string, 6> default_labels();
    static OrbitalBasis standard();

    std::span<const cplx> orbital(int i) const { return cols.col(i); }
};

// Orbital basis whose positional pairs (1,6), (2,5), (3,4) span three
// mutually orthogonal 2-dimensional subspaces (always true for an
// orthonormal basis; the pairing is the meaning carried on top).
struct PairedBasis {
    OrbitalBasis basis;
    static constexpr std::array<std::array<int, 2>, 3> pairing{{{0, 5}, {1, 4}, {2, 3}}}; // 0-based

    // Projector onto the span of pair p.
    Mat pair_projector(int p) const;
};

enum class Shape { BD8, Lone5, CIS4, CID4, Slater5, CIS5, General };

std::string shape_name(Shape s);

struct CITerm {
    std::array<int, 3> orbitals; // 0-based ascending indices into the basis
    cplx coeff;                  // multiplies the ascending wedge of those orbitals
};

struct CIExpansion {
    OrbitalBasis basis;
    std::vector<CITerm> terms;
    Shape shape = Shape::General;

    Trivector reconstruct() const;
    double residual(const Trivector& source) const;
    int nonzero_terms(double tol = 1e-10) const;
    void drop_zero_terms(double tol = 1e-10);
    void sort_terms(); // lexicographic by orbital triple
};

// Full 20-term expansion of t in the given basis (coefficients of every
// configuration, lexicographic).
CIExpansion full_expansion(const Trivector& t, const OrbitalBasis& basis);

// Adjusts orbital phases so coefficients on the given configurations become
// real nonnegative, greedily in the order given (later configurations whose
// phase is already determined by earlier ones are left as they come out).
// Both the basis and the terms are updated consistently; `t` is the source
// trivector the terms refer to.
void fix_phases(OrbitalBasis& basis, std::vector<CITerm>& terms, const Trivector& t,
                const std::vector<std::array<int, 3>>& priority);

} // namespace bd3
