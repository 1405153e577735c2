#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace bd3 {

using cplx = std::complex<double>;

// Small dense complex matrix, column-major so that a column (an orbital) is
// contiguous.  Sizes in this project never exceed 6x6.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(c) * rows_ + r]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(c) * rows_ + r]; }

    std::span<cplx> col(int c) { return {a_.data() + static_cast<size_t>(c) * rows_, static_cast<size_t>(rows_)}; }
    std::span<const cplx> col(int c) const {
        return {a_.data() + static_cast<size_t>(c) * rows_, static_cast<size_t>(rows_)};
    }
    void set_col(int c, std::span<const cplx> v);

    Mat adjoint() const;
    Mat operator*(const Mat& rhs) const;

    // Keeps columns [0, keep) and drops the rest.
    Mat first_cols(int keep) const;

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

using Vec = std::vector<cplx>;

cplx dot(std::span<const cplx> a, std::span<const cplx> b); // conjugate-linear in a
double norm(std::span<const cplx> a);
void scale(std::span<cplx> a, cplx s);
void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x); // y += a*x
Vec matvec(const Mat& m, std::span<const cplx> x);

double max_abs_offdiag(const Mat& h);
double unitarity_defect(const Mat& u);        // max |U^H U - I|
bool is_hermitian(const Mat& h, double tol);

cplx det2(const Mat& m);
cplx det3(const Mat& m);

struct EigResult {
    std::vector<double> values; // descending
    Mat vectors;                // columns match values
};

// Cyclic complex Jacobi for Hermitian matrices.  Off-diagonal Frobenius norm
// threshold 1e-13, at most 100 sweeps.  Throws precondition_error on
// non-Hermitian input (tolerance 1e-10).
EigResult hermitian_eig(const Mat& h);

struct SvdResult {
    Mat u;                      // m x m unitary
    std::vector<double> sigma;  // min(m,n), descending, nonnegative
    Mat v;                      // n x n unitary, a = u * diag(sigma) * v^H
};

// One-sided Jacobi SVD for matrices up to 3x4 (any small size works).
SvdResult svd(const Mat& a);

// Modified Gram-Schmidt with one re-orthogonalization pass.  Columns that lose
// all their norm (tolerance `drop_tol`) are dropped.
Mat orthonormalize(const Mat& a, double drop_tol = 1e-12);

// Extends the given orthonormal columns to a full orthonormal basis of C^rows.
Mat complete_basis(const Mat& partial);

// All vectors orthogonal to the columns of `frame`, as columns.
Mat orthogonal_complement(const Mat& frame);

} // namespace bd3
