#include "bd3/exterior.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bd3 {

namespace {

constexpr int kMaxDim = 6;

constexpr std::array<std::array<int, kMaxDim + 1>, kMaxDim + 1> make_binom() {
    std::array<std::array<int, kMaxDim + 1>, kMaxDim + 1> b{};
    for (int n = 0; n <= kMaxDim; ++n) {
        b[n][0] = 1;
        for (int k = 1; k <= n; ++k) b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : 0);
    }
    return b;
}

constexpr auto kBinom = make_binom();

void check_dim_deg(int dim, int deg, const char* where) {
    if (dim < 0 || dim > kMaxDim || deg < 0 || deg > dim)
        throw precondition_error(std::string(where) + ": invalid degrees for dimension " + std::to_string(dim));
}

} // namespace

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    return kBinom[n][k];
}

int sort_sign(std::span<int> idx) {
    int sign = 1;
    const int k = static_cast<int>(idx.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) {
                std::swap(idx[i], idx[j]);
                sign = -sign;
            }
        }
    return sign;
}

int comb_rank(std::span<const int> idx, int d) {
    // Number of sorted k-subsets lexicographically before idx.
    const int k = static_cast<int>(idx.size());
    int rank = 0, prev = -1;
    for (int j = 0; j < k; ++j) {
        for (int t = prev + 1; t < idx[j]; ++t) rank += binom(d - 1 - t, k - 1 - j);
        prev = idx[j];
    }
    return rank;
}

void comb_unrank(int rank, int d, int k, std::span<int> out) {
    int t = 0;
    for (int j = 0; j < k; ++j) {
        while (true) {
            const int block = binom(d - 1 - t, k - 1 - j);
            if (rank < block) break;
            rank -= block;
            ++t;
        }
        out[j] = t++;
    }
}

Multivector::Multivector(int dim, int degree) : dim_(dim), deg_(degree) {
    check_dim_deg(dim, degree, "Multivector");
    a_.assign(binom(dim, degree), cplx{});
}

Multivector Multivector::basis(int dim, std::initializer_list<int> orbitals) {
    Multivector m(dim, static_cast<int>(orbitals.size()));
    std::vector<int> idx(orbitals);
    m.add(idx, 1.0);
    return m;
}

Multivector Multivector::from_vector(std::span<const cplx> v) {
    Multivector m(static_cast<int>(v.size()), 1);
    std::copy(v.begin(), v.end(), m.a_.begin());
    return m;
}

cplx Multivector::amp(std::span<const int> idx) const {
    std::array<int, kMaxDim> s;
    std::copy(idx.begin(), idx.end(), s.begin());
    std::span<int> view(s.data(), idx.size());
    const int sign = sort_sign(view);
    if (sign == 0) return {};
    return static_cast<double>(sign) * a_[comb_rank(view, dim_)];
}

void Multivector::add(std::span<const int> idx, cplx value) {
    std::array<int, kMaxDim> s;
    std::copy(idx.begin(), idx.end(), s.begin());
    std::span<int> view(s.data(), idx.size());
    const int sign = sort_sign(view);
    if (sign == 0) return;
    a_[comb_rank(view, dim_)] += static_cast<double>(sign) * value;
}

double Multivector::norm() const {
    double s = 0.0;
    for (auto z : a_) s += std::norm(z);
    return std::sqrt(s);
}

bool Multivector::is_zero(double tol) const {
    for (auto z : a_)
        if (std::abs(z) > tol) return false;
    return true;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

Multivector& Multivector::operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
}

Multivector Multivector::operator+(const Multivector& rhs) const {
    Multivector m = *this;
    m += rhs;
    return m;
}

Multivector Multivector::operator-(const Multivector& rhs) const {
    Multivector m = *this;
    m -= rhs;
    return m;
}

Multivector Multivector::operator*(cplx s) const {
    Multivector m = *this;
    m *= s;
    return m;
}

Multivector Multivector::operator-() const { return *this * cplx{-1.0}; }

Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.dim() != b.dim()) throw precondition_error("wedge: dimension mismatch");
    const int d = a.dim(), p = a.degree(), q = b.degree();
    if (p + q > d) throw precondition_error("wedge: result degree exceeds dimension");

    Multivector out(d, p + q);
    std::vector<int> ia(p), ib(q), merged(p + q);
    for (int ra = 0; ra < a.size(); ++ra) {
        if (a[ra] == cplx{}) continue;
        comb_unrank(ra, d, p, ia);
        for (int rb = 0; rb < b.size(); ++rb) {
            if (b[rb] == cplx{}) continue;
            comb_unrank(rb, d, q, ib);
            std::copy(ia.begin(), ia.end(), merged.begin());
            std::copy(ib.begin(), ib.end(), merged.begin() + p);
            out.add(merged, a[ra] * b[rb]);
        }
    }
    return out;
}

Multivector wedge(std::span<const cplx> v, const Multivector& b) {
    return wedge(Multivector::from_vector(v), b);
}

Multivector wedge(std::span<const cplx> u, std::span<const cplx> v) {
    return wedge(Multivector::from_vector(u), Multivector::from_vector(v));
}

Multivector wedge_cols(const Mat& m, std::span<const int> cols) {
    const int d = m.rows();
    const int k = static_cast<int>(cols.size());
    Multivector out(d, k);
    std::vector<int> rows(k);
    Mat minor(k, k);
    for (int r = 0; r < out.size(); ++r) {
        comb_unrank(r, d, k, rows);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor(i, j) = m(rows[i], cols[j]);
        switch (k) {
            case 1: out[r] = minor(0, 0); break;
            case 2: out[r] = det2(minor); break;
            case 3: out[r] = det3(minor); break;
            default: throw precondition_error("wedge_cols: unsupported degree");
        }
    }
    return out;
}

cplx inner(const Multivector& a, const Multivector& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree())
        throw precondition_error("inner: degree or dimension mismatch");
    cplx s{};
    for (int i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Multivector interior(std::span<const cplx> v, const Multivector& t) {
    const int d = t.dim(), k = t.degree();
    if (static_cast<int>(v.size()) != d) throw precondition_error("interior: vector dimension mismatch");
    if (k == 0) return Multivector(d, 0);

    Multivector out(d, k - 1);
    std::vector<int> idx(k), rest(k - 1);
    for (int r = 0; r < t.size(); ++r) {
        if (t[r] == cplx{}) continue;
        comb_unrank(r, d, k, idx);
        for (int pos = 0; pos < k; ++pos) {
            const cplx vb = std::conj(v[idx[pos]]);
            if (vb == cplx{}) continue;
            int w = 0;
            for (int j = 0; j < k; ++j)
                if (j != pos) rest[w++] = idx[j];
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            out[comb_rank(rest, d)] += sign * vb * t[r];
        }
    }
    return out;
}

Multivector change_basis(const Multivector& t, const Mat& u) {
    if (u.rows() != t.dim() || u.cols() != t.dim())
        throw precondition_error("change_basis: matrix size mismatch");
    if (unitarity_defect(u) > 1e-12) throw precondition_error("change_basis: matrix not unitary within 1e-12");

    const int d = t.dim(), k = t.degree();
    Multivector out(d, k);
    std::vector<int> idx(k);
    for (int r = 0; r < t.size(); ++r) {
        if (t[r] == cplx{}) continue;
        comb_unrank(r, d, k, idx);
        out += wedge_cols(u, idx) * t[r];
    }
    return out;
}

Multivector one_body_apply(const Mat& a, const Multivector& t) {
    const int d = t.dim(), k = t.degree();
    Multivector out(d, k);
    std::vector<int> idx(k), mod(k);
    for (int r = 0; r < t.size(); ++r) {
        if (t[r] == cplx{}) continue;
        comb_unrank(r, d, k, idx);
        for (int pos = 0; pos < k; ++pos) {
            mod.assign(idx.begin(), idx.end());
            for (int row = 0; row < d; ++row) {
                const cplx f = a(row, idx[pos]);
                if (f == cplx{}) continue;
                mod[pos] = row;
                out.add(mod, f * t[r]);
            }
            mod[pos] = idx[pos];
        }
    }
    return out;
}

Multivector express_in_basis(const Multivector& t, const Mat& basis) {
    const int d = t.dim(), k = t.degree();
    Multivector out(d, k);
    std::vector<int> cols(k);
    for (int r = 0; r < out.size(); ++r) {
        comb_unrank(r, d, k, cols);
        out[r] = inner(wedge_cols(basis, cols), t);
    }
    return out;
}

bool is_decomposable(const Bivector& b, double tol) {
    if (b.degree() != 2) throw precondition_error("is_decomposable: expects a bivector");
    const double n2 = b.norm() * b.norm();
    if (n2 == 0.0) return true;
    return wedge(b, b).norm() <= tol * n2;
}

Bivector decomposable_in_span(const Bivector& g1, const Bivector& g2) {
    if (g1.dim() != 4 || g2.dim() != 4 || g1.degree() != 2 || g2.degree() != 2)
        throw precondition_error("decomposable_in_span: expects bivectors over C^4");

    const cplx ip = inner(g1, g2);
    const double n1 = g1.norm(), n2 = g2.norm();
    if (n1 == 0.0 || n2 == 0.0 || std::abs(std::abs(ip) - n1 * n2) < 1e-12 * n1 * n2)
        throw precondition_error("decomposable_in_span: inputs linearly dependent");

    if (is_decomposable(g1)) return g1;

    // wedge of two bivectors over C^4 is one component (the volume form).
    const cplx a = wedge(g1, g1)[0];
    const cplx b = wedge(g1, g2)[0];
    const cplx c = wedge(g2, g2)[0];

    const cplx disc = std::sqrt(b * b - a * c);
    const cplx z1 = (-b + disc) / a;
    const cplx z2 = (-b - disc) / a;
    cplx z;
    if (std::abs(z1) < std::abs(z2))
        z = z1;
    else if (std::abs(z2) < std::abs(z1))
        z = z2;
    else
        z = (std::real(z1) >= std::real(z2)) ? z1 : z2;

    Bivector out = g1 * z + g2;
    if (out.norm() < 1e-12) throw internal_error("decomposable_in_span: produced zero bivector");
    return out;
}

} // namespace bd3
