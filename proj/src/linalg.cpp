#include "bd3/linalg.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bd3 {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Mat::set_col(int c, std::span<const cplx> v) {
    std::copy(v.begin(), v.end(), col(c).begin());
}

Mat Mat::adjoint() const {
    Mat m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Mat Mat::operator*(const Mat& rhs) const {
    Mat m(rows_, rhs.cols_);
    for (int c = 0; c < rhs.cols_; ++c)
        for (int k = 0; k < cols_; ++k) {
            const cplx f = rhs(k, c);
            if (f == cplx{}) continue;
            for (int r = 0; r < rows_; ++r) m(r, c) += (*this)(r, k) * f;
        }
    return m;
}

Mat Mat::first_cols(int keep) const {
    Mat m(rows_, keep);
    for (int c = 0; c < keep; ++c) m.set_col(c, col(c));
    return m;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s{};
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(std::span<const cplx> a) {
    double s = 0.0;
    for (auto z : a) s += std::norm(z);
    return std::sqrt(s);
}

void scale(std::span<cplx> a, cplx s) {
    for (auto& z : a) z *= s;
}

void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Vec matvec(const Mat& m, std::span<const cplx> x) {
    Vec y(m.rows());
    for (int c = 0; c < m.cols(); ++c) axpy(y, x[c], m.col(c));
    return y;
}

double max_abs_offdiag(const Mat& h) {
    double m = 0.0;
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c)
            if (r != c) m = std::max(m, std::abs(h(r, c)));
    return m;
}

double unitarity_defect(const Mat& u) {
    Mat g = u.adjoint() * u;
    double m = 0.0;
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c) {
            cplx want = (r == c) ? cplx{1.0} : cplx{};
            m = std::max(m, std::abs(g(r, c) - want));
        }
    return m;
}

bool is_hermitian(const Mat& h, double tol) {
    if (h.rows() != h.cols()) return false;
    for (int r = 0; r < h.rows(); ++r)
        for (int c = r; c < h.cols(); ++c)
            if (std::abs(h(r, c) - std::conj(h(c, r))) > tol) return false;
    return true;
}

cplx det2(const Mat& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

cplx det3(const Mat& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

namespace {

// Unitary plane rotation J embedded at (p,q) zeroing the (p,q) entry of a
// Hermitian matrix.  Writing A_pq = r e^{i phi}, the similarity splits into a
// phase diag(1, e^{-i phi}) followed by a real Givens rotation with
// tan(2 theta) = 2r / (A_pp - A_qq).
struct PlaneRot {
    double c;  // cos(theta)
    cplx s;    // e^{-i phi} sin(theta)
};

PlaneRot make_rot(double app, double aqq, cplx apq) {
    const double r = std::abs(apq);
    const double phi = std::arg(apq);
    const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
    return {std::cos(theta), std::polar(std::sin(theta), -phi)};
}

// A <- J^H A J with J = I except J(p,p)=c, J(p,q)=-conj(s), J(q,p)=s, J(q,q)=c.
void apply_similarity(Mat& a, int p, int q, const PlaneRot& j) {
    const int n = a.rows();
    for (int r = 0; r < n; ++r) { // column update: A <- A J
        const cplx ap = a(r, p), aq = a(r, q);
        a(r, p) = ap * j.c + aq * j.s;
        a(r, q) = -ap * std::conj(j.s) + aq * j.c;
    }
    for (int col = 0; col < n; ++col) { // row update: A <- J^H A
        const cplx ap = a(p, col), aq = a(q, col);
        a(p, col) = ap * j.c + aq * std::conj(j.s);
        a(q, col) = -ap * j.s + aq * j.c;
    }
}

void apply_right(Mat& a, int p, int q, const PlaneRot& j) { // A <- A J
    for (int r = 0; r < a.rows(); ++r) {
        const cplx ap = a(r, p), aq = a(r, q);
        a(r, p) = ap * j.c + aq * j.s;
        a(r, q) = -ap * std::conj(j.s) + aq * j.c;
    }
}

double offdiag_fro(const Mat& a) {
    double s = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

} // namespace

EigResult hermitian_eig(const Mat& h) {
    if (h.rows() != h.cols()) throw precondition_error("hermitian_eig: matrix not square");
    if (!is_hermitian(h, 1e-10)) throw precondition_error("hermitian_eig: matrix not Hermitian within 1e-10");

    const int n = h.rows();
    Mat a = h;
    Mat v = Mat::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_fro(a) < 1e-13) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                PlaneRot j = make_rot(std::real(a(p, p)), std::real(a(q, q)), a(p, q));
                apply_similarity(a, p, q, j);
                apply_right(v, p, q, j);
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::real(a(i, i)) > std::real(a(j, j)); });

    EigResult res;
    res.values.resize(n);
    res.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = std::real(a(order[k], order[k]));
        res.vectors.set_col(k, v.col(order[k]));
    }
    return res;
}

SvdResult svd(const Mat& a) {
    if (a.rows() < a.cols()) {
        SvdResult t = svd(a.adjoint());
        return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }

    const int m = a.rows(), n = a.cols();
    Mat g = a;
    Mat v = Mat::identity(n);

    double ref = 0.0;
    for (int c = 0; c < n; ++c) ref = std::max(ref, norm(g.col(c)));
    const double stop = std::max(ref * ref, 1.0e-300) * 1e-28;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = dot(g.col(p), g.col(q));
                off += std::norm(hpq);
                if (std::abs(hpq) < 1e-300) continue;
                const double np = norm(g.col(p)), nq = norm(g.col(q));
                const double hpp = np * np, hqq = nq * nq;
                PlaneRot j = make_rot(hpp, hqq, hpq);
                apply_right(g, p, q, j);
                apply_right(v, p, q, j);
            }
        if (off < stop) break;
    }

    std::vector<double> sig(n);
    for (int c = 0; c < n; ++c) sig[c] = norm(g.col(c));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sig[i] > sig[j]; });

    SvdResult res;
    res.sigma.resize(n);
    res.v = Mat(n, n);
    Mat ucols(m, n);
    for (int k = 0; k < n; ++k) {
        res.sigma[k] = sig[order[k]];
        res.v.set_col(k, v.col(order[k]));
        ucols.set_col(k, g.col(order[k]));
        if (res.sigma[k] > 1e-14 * std::max(1.0, ref)) scale(ucols.col(k), 1.0 / res.sigma[k]);
        else std::fill(ucols.col(k).begin(), ucols.col(k).end(), cplx{});
    }
    res.u = complete_basis(orthonormalize(ucols));
    if (res.u.cols() != m) throw internal_error("svd: failed to complete left factor");
    return res;
}

Mat orthonormalize(const Mat& a, double drop_tol) {
    const int m = a.rows();
    std::vector<Vec> kept;
    for (int c = 0; c < a.cols(); ++c) {
        Vec w(a.col(c).begin(), a.col(c).end());
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& k : kept) axpy(w, -dot(k, w), k);
        const double n = norm(w);
        if (n > drop_tol) {
            scale(w, 1.0 / n);
            kept.push_back(std::move(w));
        }
    }
    Mat q(m, static_cast<int>(kept.size()));
    for (size_t c = 0; c < kept.size(); ++c) q.set_col(static_cast<int>(c), kept[c]);
    return q;
}

Mat complete_basis(const Mat& partial) {
    const int m = partial.rows();
    Mat work(m, m + partial.cols());
    for (int c = 0; c < partial.cols(); ++c) work.set_col(c, partial.col(c));
    for (int c = 0; c < m; ++c) work(c, partial.cols() + c) = 1.0;
    Mat q = orthonormalize(work, 1e-8);
    if (q.cols() != m) throw internal_error("complete_basis: degenerate input");
    return q;
}

Mat orthogonal_complement(const Mat& frame) {
    Mat full = complete_basis(frame);
    Mat comp(frame.rows(), frame.rows() - frame.cols());
    for (int c = frame.cols(); c < full.cols(); ++c) comp.set_col(c - frame.cols(), full.col(c));
    return comp;
}

} // namespace bd3
