#pragma once

#include "bd3/linalg.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bd3 {

// Alternating tensors over C^d for d <= 6, stored densely on strictly
// increasing index tuples (lexicographic order).  All sign bookkeeping goes
// through sort_sign(); nothing else touches permutation parity.

int binom(int n, int k);

// Sorts idx ascending in place; returns the permutation sign, or 0 when an
// index repeats.
int sort_sign(std::span<int> idx);

// Lexicographic rank of a sorted k-subset of {0,...,d-1}, and its inverse.
int comb_rank(std::span<const int> sorted_idx, int d);
void comb_unrank(int rank, int d, int k, std::span<int> out);

class Multivector {
public:
    Multivector() : dim_(0), deg_(0) {}
    Multivector(int dim, int degree);

    // e_{i1} ^ e_{i2} ^ ... for 0-based indices, in the given order.
    static Multivector basis(int dim, std::initializer_list<int> orbitals);
    static Multivector from_vector(std::span<const cplx> v);

    int dim() const { return dim_; }
    int degree() const { return deg_; }
    int size() const { return static_cast<int>(a_.size()); }

    cplx& operator[](int rank) { return a_[rank]; }
    const cplx& operator[](int rank) const { return a_[rank]; }

    // Amplitude access with arbitrary index order; sign resolved internally.
    cplx amp(std::span<const int> idx) const;
    void add(std::span<const int> idx, cplx value);

    double norm() const;
    bool is_zero(double tol = 0.0) const;

    Multivector& operator+=(const Multivector& rhs);
    Multivector& operator-=(const Multivector& rhs);
    Multivector& operator*=(cplx s);
    Multivector operator+(const Multivector& rhs) const;
    Multivector operator-(const Multivector& rhs) const;
    Multivector operator*(cplx s) const;
    Multivector operator-() const;

    std::span<const cplx> raw() const { return a_; }
    std::span<cplx> raw() { return a_; }

private:
    int dim_, deg_;
    std::vector<cplx> a_;
};

using Trivector = Multivector; // degree 3, dim 6 throughout this project
using Bivector = Multivector;  // degree 2, dim 4..6

// Alternating product.  Errors if degrees or dimensions are incompatible or
// the result degree exceeds the dimension.
Multivector wedge(const Multivector& a, const Multivector& b);
Multivector wedge(std::span<const cplx> v, const Multivector& b);
Multivector wedge(std::span<const cplx> u, std::span<const cplx> v);

// Wedge of k matrix columns: the Pluecker image of span{cols}.  Components
// are k x k minors.
Multivector wedge_cols(const Mat& m, std::span<const int> cols);

// Hermitian inner product, conjugate-linear in the first slot; equals
// det(<f_i, g_j>) on decomposables.  Errors on degree/dimension mismatch.
cplx inner(const Multivector& a, const Multivector& b);

// Interior product adjoint to wedging: <beta, interior(v, t)> = <v ^ beta, t>.
// Conjugate-linear in v.
Multivector interior(std::span<const cplx> v, const Multivector& t);

// U applied factorwise: U x1 ^ U x2 ^ ... extended linearly.  U must be
// unitary within 1e-12.
Multivector change_basis(const Multivector& t, const Mat& u);

// One-body operator applied by the Leibniz rule:
// A.(x^y^z) = (Ax)^y^z + x^(Ay)^z + x^y^(Az).
Multivector one_body_apply(const Mat& a, const Multivector& t);

// Coefficients of t on all degree-`deg` configurations of the basis columns,
// i.e. inner(wedge of columns, t) in lexicographic column order.
Multivector express_in_basis(const Multivector& t, const Mat& basis);

// true iff ||b ^ b|| <= tol * ||b||^2 (zero bivector counts as decomposable).
bool is_decomposable(const Bivector& b, double tol = 1e-10);

// A nonzero decomposable combination z*g1 + g2 in span{g1, g2} of bivectors
// over C^4 (returns g1 itself when g1 is decomposable).  Root of the
// quadratic (g1^g1) z^2 + 2 (g1^g2) z + (g2^g2) with smaller modulus, ties
// toward nonnegative real part.  Errors on linearly dependent inputs.
Bivector decomposable_in_span(const Bivector& g1, const Bivector& g2);

} // namespace bd3
