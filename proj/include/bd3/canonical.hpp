#pragma once

#include "bd3/expansion.hpp"
#include "bd3/spectral.hpp"

namespace bd3 {

// Schmidt-like canonical form of a bivector: b = sum_i coeff[i] u_i ^ v_i
// with all u_i, v_i jointly orthonormal and coefficients descending
// nonnegative.  At most floor(dim/2) terms.
struct GeminalForm {
    int dim = 0;
    std::vector<Vec> u, v;
    std::vector<double> coeff;

    Bivector reconstruct() const;
};

GeminalForm geminal_canonical(const Bivector& b);

// Antisymmetric coefficient matrix G with b = (1/2) sum G_ij e_i ^ e_j.
Mat bivector_matrix(const Bivector& b);
// Orthonormal basis of the support (range of the coefficient matrix).
Mat bivector_support(const Bivector& b, double tol = 1e-9);
// Coordinates of a bivector on the span of `frame` columns.
Bivector restrict_bivector(const Bivector& b, const Mat& frame);
// Inverse of restrict_bivector.
Bivector extend_bivector(const Bivector& bk, const Mat& frame);

// Canonical form of a trivector of rank <= 5:
// t = a1 w^u1^v1 + a2 w^u2^v2, a1 >= a2 >= 0, w of occupation 1.
// Errors on rank-6 input.
struct ThreeInFive {
    Vec w, u1, v1, u2, v2;
    double a1 = 0.0, a2 = 0.0;
};

ThreeInFive three_in_five(const Trivector& t);

// Strongly orthogonal split t = w ^ gamma + wp ^ gamma_p with w a top natural
// orbital, wp carrying the complementary occupation, and both geminals
// supported on the orthogonal complement of {w, wp}.
struct StrongSplit {
    Vec w, wp;
    Bivector gamma, gamma_p;
    double residual = 0.0;
    bool degenerate_top = false; // lambda1 multiplicity > 1
};

StrongSplit strong_split(const Trivector& t);

// Five-term reduction of a wave function with no single excitations relative
// to the reference space R (the SVD-lemma construction): rows A, B1, -B2, B3
// on the f/g diagram plus D on g1^g2^g3, all made real nonnegative by phase
// choice, B1 >= B2 >= B3 the singular values of the singles block.
// `ref_frame` is a 6x3 orthonormal frame spanning R.  Errors (with the
// residual in the message) when t has weight outside
// ^3R + R^R^Rperp + ^3Rperp beyond 1e-9.
CIExpansion svd_reduce_singles(const Trivector& t, const Mat& ref_frame);

// Canonical CIS form: rows A, B1, -B2, B3 with A >= 0, B1 >= B2 >= B3 >= 0.
// For rank <= 5 inputs returns the A = 0 family member (Slater inputs get the
// single-row A = 1 form).  Errors when t is not CIS for R within 1e-9.
CIExpansion cis_canonical(const Trivector& t, const Mat& ref_frame);

// Canonical CID form: four single-occupancy rows with descending nonnegative
// coefficients on natural orbitals.  Errors when t lies outside the CID
// subspace of R within 1e-9.
CIExpansion cid_canonical(const Trivector& t, const Mat& ref_frame);

// Lone-orbital five-term expansion: the first reference orbital appears in
// exactly one configuration.  Degenerate inputs produce rows with zero
// coefficients.
CIExpansion lone_orbital(const Trivector& t);

// Borland-Dennis expansion: at most eight single-occupancy configurations on
// natural orbitals, pairs at positions (1,6), (2,5), (3,4), occupations
// descending.  `start_orbital` selects which natural orbital seeds the
// construction (0 = highest occupation).
CIExpansion bd_expansion(const Trivector& t, int start_orbital = 0);

// The paired natural-orbital basis underlying bd_expansion.
PairedBasis qubit_subspace(const Trivector& t);

} // namespace bd3
