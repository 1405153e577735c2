#include "bd3/canonical.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bd3 {

namespace {

Vec to_vec(std::span<const cplx> s) { return Vec(s.begin(), s.end()); }

Vec conj_vec(const Vec& v) {
    Vec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = std::conj(v[i]);
    return w;
}

Mat frame_of(const std::vector<Vec>& cols) {
    Mat m(cols.empty() ? 0 : static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) m.set_col(static_cast<int>(c), cols[c]);
    return m;
}

void check_frame(const Mat& f, int cols, const char* where) {
    if (f.rows() != 6 || f.cols() != cols) throw precondition_error(std::string(where) + ": expects a 6x" + std::to_string(cols) + " frame");
    if (unitarity_defect(f) > 1e-10) throw precondition_error(std::string(where) + ": frame columns not orthonormal");
}

// det-normalizes a small unitary by spreading the determinant phase onto the
// last column.
void make_special(Mat& u) {
    cplx d = (u.cols() == 2) ? det2(u) : det3(u);
    scale(u.col(u.cols() - 1), std::conj(d) / std::abs(d));
}

Mat conj_mat(const Mat& m) {
    Mat c(m.rows(), m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) c(i, j) = std::conj(m(i, j));
    return c;
}

Mat hstack(const Mat& a, const Mat& b) {
    Mat m(a.rows(), a.cols() + b.cols());
    for (int c = 0; c < a.cols(); ++c) m.set_col(c, a.col(c));
    for (int c = 0; c < b.cols(); ++c) m.set_col(a.cols() + c, b.col(c));
    return m;
}

double config_weight_outside(const Multivector& coeffs, const std::vector<std::array<int, 3>>& keep) {
    double bad = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        if (std::find(keep.begin(), keep.end(), idx) == keep.end()) bad += std::norm(coeffs[r]);
    }
    return std::sqrt(bad);
}

CIExpansion assemble(const Trivector& t, Mat basis_mat, std::array<std::string, 6> labels,
                     const std::vector<std::array<int, 3>>& configs,
                     const std::vector<int>& phase_signs, Shape shape, const char* where,
                     double stray_tol = 1e-8, std::vector<int> phase_order = {}) {
    OrbitalBasis basis(std::move(basis_mat), std::move(labels));
    Multivector coeffs = express_in_basis(t, basis.cols);

    const double stray = config_weight_outside(coeffs, configs);
    if (stray > stray_tol)
        throw internal_error(std::string(where) + ": stray coefficient weight " + std::to_string(stray));

    CIExpansion e;
    e.basis = std::move(basis);
    e.shape = shape;
    for (const auto& conf : configs) e.terms.push_back({conf, coeffs.amp(conf)});

    if (phase_order.empty())
        for (size_t i = 0; i < configs.size(); ++i) phase_order.push_back(static_cast<int>(i));
    std::vector<std::array<int, 3>> priority;
    for (int i : phase_order)
        if (phase_signs.empty() || phase_signs[i] != 0) priority.push_back(configs[i]);
    // Sign -1 rows are made nonpositive by fixing the phase of the negated
    // coefficient; fix_phases handles plain nonnegative targets, so flip the
    // stored coefficient around the call.
    std::vector<CITerm> work = e.terms;
    for (size_t i = 0; i < configs.size(); ++i)
        if (!phase_signs.empty() && phase_signs[i] < 0)
            for (auto& term : work)
                if (term.orbitals == configs[i]) term.coeff = -term.coeff;
    fix_phases(e.basis, work, t, priority);
    for (auto& term : e.terms) term.coeff = inner(wedge_cols(e.basis.cols, term.orbitals), t);
    return e;
}

} // namespace

// ---------------------------------------------------------------------------
// geminal canonical form
// ---------------------------------------------------------------------------

Bivector GeminalForm::reconstruct() const {
    Bivector b(dim, 2);
    for (size_t i = 0; i < coeff.size(); ++i) b += wedge(u[i], v[i]) * cplx{coeff[i]};
    return b;
}

Mat bivector_matrix(const Bivector& b) {
    const int d = b.dim();
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const int idx[2] = {i, j};
            g(i, j) = b.amp(idx);
            g(j, i) = -g(i, j);
        }
    return g;
}

Mat bivector_support(const Bivector& b, double tol) {
    Mat g = bivector_matrix(b);
    SvdResult s = svd(g);
    int keep = 0;
    while (keep < static_cast<int>(s.sigma.size()) && s.sigma[keep] > tol * std::max(1.0, s.sigma[0])) ++keep;
    return s.u.first_cols(keep);
}

Bivector restrict_bivector(const Bivector& b, const Mat& frame) {
    const int k = frame.cols();
    Bivector out(k, 2);
    for (int r = 0; r < out.size(); ++r) {
        int idx[2];
        comb_unrank(r, k, 2, idx);
        out[r] = inner(wedge_cols(frame, idx), b);
    }
    return out;
}

Bivector extend_bivector(const Bivector& bk, const Mat& frame) {
    Bivector out(frame.rows(), 2);
    for (int r = 0; r < bk.size(); ++r) {
        if (bk[r] == cplx{}) continue;
        int idx[2];
        comb_unrank(r, bk.dim(), 2, idx);
        out += wedge_cols(frame, idx) * bk[r];
    }
    return out;
}

GeminalForm geminal_canonical(const Bivector& b) {
    if (b.degree() != 2) throw precondition_error("geminal_canonical: expects a bivector");
    const int d = b.dim();
    GeminalForm gf;
    gf.dim = d;

    const double scale_n = b.norm();
    if (scale_n == 0.0) return gf;

    // Eigenvalues of G G^H are the doubly degenerate squared Schmidt
    // coefficients; the antilinear map w -> -G conj(w)/sigma produces the
    // partner orbital inside each eigenvalue cluster.
    Mat g = bivector_matrix(b);
    EigResult eig = hermitian_eig(g * g.adjoint());

    std::vector<Vec> used;
    auto project_used = [&](Vec w) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& uvec : used) axpy(w, -dot(uvec, w), uvec);
        return w;
    };

    for (int i = 0; i < d; ++i) {
        if (eig.values[i] <= 1e-18 * scale_n * scale_n) break;
        Vec w = project_used(to_vec(eig.vectors.col(i)));
        const double rem = norm(w);
        if (rem < 1e-6) continue; // consumed as a partner of an earlier pair
        scale(w, 1.0 / rem);

        Vec gw = matvec(g, conj_vec(w));
        const double sigma = norm(gw);
        if (sigma <= 1e-9 * scale_n) continue;
        scale(gw, -1.0 / sigma);
        Vec z = project_used(gw);
        axpy(z, -dot(w, z), w);
        const double zn = norm(z);
        if (zn < 0.5) throw internal_error("geminal_canonical: partner orbital collapsed");
        scale(z, 1.0 / zn);

        gf.coeff.push_back(sigma);
        gf.u.push_back(w);
        gf.v.push_back(z);
        used.push_back(std::move(w));
        used.push_back(std::move(z));
    }

    std::vector<int> order(gf.coeff.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return gf.coeff[a] > gf.coeff[c]; });
    GeminalForm sorted;
    sorted.dim = d;
    for (int k : order) {
        sorted.coeff.push_back(gf.coeff[k]);
        sorted.u.push_back(gf.u[k]);
        sorted.v.push_back(gf.v[k]);
    }

    if ((sorted.reconstruct() - b).norm() > 1e-8 * std::max(1.0, scale_n))
        throw internal_error("geminal_canonical: reconstruction drift");
    return sorted;
}

// ---------------------------------------------------------------------------
// rank <= 5 canonical form and the strongly orthogonal split
// ---------------------------------------------------------------------------

ThreeInFive three_in_five(const Trivector& t) {
    if (rank(t) > 5) throw precondition_error("three_in_five: input has rank 6");
    const NaturalSpectrum ns = natural_spectrum(t);

    ThreeInFive f;
    f.w = to_vec(ns.orbitals.col(0));
    Bivector gamma = interior(f.w, t);
    if ((t - wedge(f.w, gamma)).norm() > 1e-9 * std::max(1.0, t.norm()))
        throw internal_error("three_in_five: top natural orbital does not factor out");

    GeminalForm gf = geminal_canonical(gamma);
    std::vector<Vec> taken{f.w};
    if (!gf.coeff.empty()) {
        f.a1 = gf.coeff[0];
        f.u1 = gf.u[0];
        f.v1 = gf.v[0];
        taken.push_back(f.u1);
        taken.push_back(f.v1);
    }
    if (gf.coeff.size() > 1) {
        f.a2 = gf.coeff[1];
        f.u2 = gf.u[1];
        f.v2 = gf.v[1];
        taken.push_back(f.u2);
        taken.push_back(f.v2);
    }
    // Pad missing directions so the five orbitals always form a frame.
    Mat comp = orthogonal_complement(frame_of(taken));
    int next = 0;
    if (f.u1.empty()) f.u1 = to_vec(comp.col(next++));
    if (f.v1.empty()) f.v1 = to_vec(comp.col(next++));
    if (f.u2.empty()) f.u2 = to_vec(comp.col(next++));
    if (f.v2.empty()) f.v2 = to_vec(comp.col(next++));
    return f;
}

StrongSplit strong_split(const Trivector& t) {
    const NaturalSpectrum ns = natural_spectrum(t);

    StrongSplit s;
    s.degenerate_top = ns.lambda[0] - ns.lambda[1] < 1e-8;
    s.w = to_vec(ns.orbitals.col(0));
    s.gamma = interior(s.w, t);
    Trivector rest = t - wedge(s.w, s.gamma);
    Mat gsup = bivector_support(s.gamma);

    if (rest.norm() < 1e-12) {
        Mat comp = orthogonal_complement(orthonormalize(hstack(frame_of({s.w}), gsup)));
        if (comp.cols() == 0) throw internal_error("strong_split: no free direction left");
        s.wp = to_vec(comp.col(0));
        s.gamma_p = Bivector(6, 2);
        s.residual = rest.norm();
        return s;
    }

    // The residual lives in ^3(w-perp), so its top occupation is exactly 1;
    // the partner orbital is any unit vector in that occupation-1 cluster
    // orthogonal to the support of gamma.
    Trivector rhat = rest * cplx{1.0 / rest.norm()};
    const NaturalSpectrum ns2 = natural_spectrum(rhat);
    std::vector<Vec> candidates;
    for (int i = 0; i < 6 && ns2.lambda[i] >= 1.0 - 1e-7; ++i) candidates.push_back(to_vec(ns2.orbitals.col(i)));
    if (candidates.empty()) throw internal_error("strong_split: residual has no occupation-1 orbital");

    Mat blocked = orthonormalize(hstack(frame_of({s.w}), gsup));
    Mat cand = frame_of(candidates);
    for (int c = 0; c < cand.cols(); ++c)
        for (int pass = 0; pass < 2; ++pass)
            for (int bcol = 0; bcol < blocked.cols(); ++bcol)
                axpy(cand.col(c), -dot(blocked.col(bcol), cand.col(c)), blocked.col(bcol));
    Mat admissible = orthonormalize(cand, 1e-6);
    if (admissible.cols() == 0) throw internal_error("strong_split: no admissible partner orbital");

    s.wp = to_vec(admissible.col(0));
    s.gamma_p = interior(s.wp, rest);
    s.residual = (t - wedge(s.w, s.gamma) - wedge(s.wp, s.gamma_p)).norm();
    return s;
}

// ---------------------------------------------------------------------------
// SVD-lemma reductions
// ---------------------------------------------------------------------------

namespace {

// Coefficient matrix of the single excitations of f1^f2^f3; C[i][k] multiplies
// alpha_i ^ g_k with alpha_i = (-1)^(3-i) (wedge of f's without f_i).
Mat singles_matrix(const Multivector& coeffs) {
    Mat c(3, 3);
    for (int k = 0; k < 3; ++k) {
        c(0, k) = coeffs.amp(std::array{1, 2, 3 + k});
        c(1, k) = -coeffs.amp(std::array{0, 2, 3 + k});
        c(2, k) = coeffs.amp(std::array{0, 1, 3 + k});
    }
    return c;
}

} // namespace

CIExpansion svd_reduce_singles(const Trivector& t, const Mat& ref_frame) {
    check_frame(ref_frame, 3, "svd_reduce_singles");
    Mat rp = orthogonal_complement(ref_frame);
    Multivector coeffs = express_in_basis(t, hstack(ref_frame, rp));

    double bad = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
        if (in_ref == 1) bad += std::norm(coeffs[r]);
    }
    if (std::sqrt(bad) > 1e-9)
        throw precondition_error("svd_reduce_singles: weight " + std::to_string(std::sqrt(bad)) +
                                 " outside the singles-free subspace");

    SvdResult s = svd(singles_matrix(coeffs));
    Mat p = conj_mat(s.u);
    Mat q = conj_mat(s.v);
    make_special(p);
    make_special(q);

    // The six orbital phases fix only four of the five coefficient phases
    // (the combination arg D + 2 arg A - arg B1 - arg B2 - arg B3 is gauge
    // invariant).  Priority goes to the D row -- the max-overlap Slater
    // coefficient -- then the singular-value rows; A keeps a residual phase.
    return assemble(t, hstack(ref_frame * p, rp * q), {"f1", "f2", "f3", "g1", "g2", "g3"},
                    {{{0, 1, 2}}, {{1, 2, 3}}, {{0, 2, 4}}, {{0, 1, 5}}, {{3, 4, 5}}},
                    {+1, +1, -1, +1, +1}, Shape::Slater5, "svd_reduce_singles", 1e-8,
                    {4, 1, 2, 3, 0});
}

CIExpansion cis_canonical(const Trivector& t, const Mat& ref_frame) {
    check_frame(ref_frame, 3, "cis_canonical");
    Mat rp = orthogonal_complement(ref_frame);
    Multivector coeffs = express_in_basis(t, hstack(ref_frame, rp));

    double cis_weight = std::norm(coeffs.amp(std::array{0, 1, 2}));
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
        if (in_ref == 2) cis_weight += std::norm(coeffs[r]);
    }
    if (std::sqrt(cis_weight) < 1.0 - 1e-9)
        throw precondition_error("cis_canonical: input is not CIS for the given reference space");

    const int r = rank(t);
    const std::vector<std::array<int, 3>> rows = {{{0, 1, 2}}, {{1, 2, 3}}, {{0, 2, 4}}, {{0, 1, 5}}};
    const std::vector<int> signs = {+1, +1, -1, +1};

    if (r <= 3) {
        // Slater determinant: single reference row.
        const NaturalSpectrum ns = natural_spectrum(t);
        Mat occ = ns.orbitals.first_cols(3);
        return assemble(t, hstack(occ, orthogonal_complement(occ)), {"f1", "f2", "f3", "g1", "g2", "g3"},
                        rows, signs, Shape::CIS4, "cis_canonical");
    }
    if (r <= 5) {
        // Rank-5 inputs have a one-parameter family of canonical forms; we
        // return the A = 0 member built from the rank-5 canonical form.
        ThreeInFive f = three_in_five(t);
        Mat five = frame_of({f.u2, f.v1, f.w, f.u1, f.v2});
        Mat g3 = orthogonal_complement(five);
        return assemble(t, hstack(five, g3), {"f1", "f2", "f3", "g1", "g2", "g3"}, rows, signs,
                        Shape::CIS4, "cis_canonical");
    }

    SvdResult s = svd(singles_matrix(coeffs));
    Mat p = conj_mat(s.u);
    Mat q = conj_mat(s.v);
    make_special(p);
    make_special(q);
    // The precondition admits up to ~4.5e-5 of weight outside the CIS block;
    // the stray check must not be tighter than that.
    return assemble(t, hstack(ref_frame * p, rp * q), {"f1", "f2", "f3", "g1", "g2", "g3"}, rows, signs,
                    Shape::CIS4, "cis_canonical", 5e-5);
}

CIExpansion cid_canonical(const Trivector& t, const Mat& ref_frame) {
    check_frame(ref_frame, 3, "cid_canonical");
    Mat rp = orthogonal_complement(ref_frame);
    Multivector coeffs = express_in_basis(t, hstack(ref_frame, rp));

    double bad = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        const int in_ref = static_cast<int>(std::count_if(idx.begin(), idx.end(), [](int i) { return i < 3; }));
        if (in_ref == 2 || in_ref == 0) bad += std::norm(coeffs[r]);
    }
    if (std::sqrt(bad) > 1e-9)
        throw precondition_error("cid_canonical: input is not CID for the given reference space");

    // Double-excitation block f_i ^ beta_c with beta = (g2^g3, g3^g1, g1^g2).
    Mat w(3, 3);
    for (int i = 0; i < 3; ++i) {
        w(i, 0) = coeffs.amp(std::array{i, 4, 5});
        w(i, 1) = -coeffs.amp(std::array{i, 3, 5});
        w(i, 2) = coeffs.amp(std::array{i, 3, 4});
    }
    SvdResult s = svd(w);
    Mat basis1 = hstack(ref_frame * s.u, rp * s.v);

    const std::array<int, 4> even_bits = {0b000, 0b110, 0b101, 0b011}; // slots for A1..A4 rows
    // Relabel qubits (permutation + even flip mask) so row values descend.
    static const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    static const std::array<int, 4> masks = {0b000, 0b011, 0b101, 0b110};

    Mat best_basis = basis1;
    bool found = false;
    for (const auto& perm : perms) {
        for (int mask : masks) {
            // New basis: qubit q goes to slot perm[q]; member picked by flip.
            Mat nb(6, 6);
            for (int qb = 0; qb < 3; ++qb) {
                const int lo = (mask >> qb) & 1;
                nb.set_col(perm[qb], basis1.col(lo ? 3 + qb : qb));
                nb.set_col(3 + perm[qb], basis1.col(lo ? qb : 3 + qb));
            }
            Multivector cn = express_in_basis(t, nb);
            auto val = [&](int bits) {
                std::array<int, 3> conf;
                for (int qb = 0; qb < 3; ++qb) conf[qb] = ((bits >> qb) & 1) ? 3 + qb : qb;
                std::sort(conf.begin(), conf.end());
                return std::abs(cn.amp(conf));
            };
            bool desc = true;
            for (size_t k = 0; k + 1 < even_bits.size(); ++k)
                if (val(even_bits[k]) < val(even_bits[k + 1]) - 1e-12) desc = false;
            if (desc) {
                best_basis = nb;
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found) throw internal_error("cid_canonical: no descending relabeling found");

    CIExpansion e = assemble(t, best_basis, {"f1", "f2", "f3", "f4", "f5", "f6"},
                             {{{0, 1, 2}}, {{0, 4, 5}}, {{1, 3, 5}}, {{2, 3, 4}}}, {+1, +1, +1, +1},
                             Shape::CID4, "cid_canonical");

    // The four-row single-occupancy form makes these orbitals natural.
    Mat gb = e.basis.cols.adjoint() * one_rdm(t) * e.basis.cols;
    if (max_abs_offdiag(gb) > 1e-7) throw internal_error("cid_canonical: basis failed to diagonalize the 1RDM");
    return e;
}

// ---------------------------------------------------------------------------
// lone-orbital expansion
// ---------------------------------------------------------------------------

namespace {

// Rotates the 2x2 block sum(M_ij f_i ^ g_j) into C1 f1^g1 + C2 f2^g2:
// with M = U diag V^H the new frames are F U and G conj(V).
void rotate_pair_block(Mat& f, Mat& g, const Mat& m) {
    SvdResult s = svd(m);
    Mat u = s.u, vconj = conj_mat(s.v);
    make_special(u);
    make_special(vconj);
    f = f * u;
    g = g * vconj;
}

} // namespace

CIExpansion lone_orbital(const Trivector& t) {
    if (t.norm() < 1e-12) throw precondition_error("lone_orbital: zero input");
    StrongSplit ss = strong_split(t);
    if (ss.residual > 1e-9) throw internal_error("lone_orbital: strongly orthogonal split failed");

    const std::array<std::string, 6> labels = {"l1", "l2", "f1", "f2", "g1", "g2"};
    const std::vector<std::array<int, 3>> rows = {{{0, 2, 3}}, {{1, 2, 3}}, {{1, 4, 5}}, {{1, 2, 4}}, {{1, 3, 5}}};
    const std::vector<int> signs = {+1, +1, +1, +1, +1};

    const double n1 = ss.gamma.norm(), n2 = ss.gamma_p.norm();
    cplx dep_c{};
    double dep_res = n2;
    if (n1 > 1e-12) {
        dep_c = inner(ss.gamma, ss.gamma_p) / cplx{n1 * n1};
        dep_res = (ss.gamma_p - ss.gamma * dep_c).norm();
    }

    if (n1 > 1e-9 && dep_res > 1e-9) {
        // Generic branch: find the decomposable combination in span{gamma, gamma'}.
        Mat mframe = orthogonal_complement(frame_of({ss.w, ss.wp}));
        Bivector g1_4 = restrict_bivector(ss.gamma, mframe);
        Bivector g2_4 = restrict_bivector(ss.gamma_p, mframe);
        Bivector dec = decomposable_in_span(g1_4, g2_4);

        cplx a1, a2;
        if ((dec - g1_4).norm() < 1e-14) { // early exit returned gamma itself
            a1 = 1.0;
            a2 = 0.0;
        } else {
            // dec = z*g1 + g2 up to the normalization below.
            const cplx z = (g2_4.norm() > 0.0) ? inner(g1_4, dec - g2_4) / cplx{g1_4.norm() * g1_4.norm()} : cplx{};
            const double q = std::sqrt(std::norm(z) + 1.0);
            a1 = z / q;
            a2 = 1.0 / q;
        }

        Bivector combo = ss.gamma * a1 + ss.gamma_p * a2;
        GeminalForm gfc = geminal_canonical(combo);
        if (gfc.coeff.empty() || (gfc.coeff.size() > 1 && gfc.coeff[1] > 1e-7))
            throw internal_error("lone_orbital: combination failed to be decomposable");

        Vec l1(6), l2(6);
        for (int i = 0; i < 6; ++i) {
            l1[i] = std::conj(a1) * ss.w[i] + std::conj(a2) * ss.wp[i];
            l2[i] = -a2 * ss.w[i] + a1 * ss.wp[i];
        }

        Mat fpair = frame_of({gfc.u[0], gfc.v[0]});
        Mat gpair = orthogonal_complement(hstack(frame_of({l1, l2}), fpair));
        Multivector c0 = express_in_basis(t, hstack(hstack(frame_of({l1, l2}), fpair), gpair));
        Mat m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = c0.amp(std::array{1, 2 + i, 4 + j});
        rotate_pair_block(fpair, gpair, m);

        return assemble(t, hstack(hstack(frame_of({l1, l2}), fpair), gpair), labels, rows, signs,
                        Shape::Lone5, "lone_orbital");
    }

    // Degenerate branch: t = what ^ gtil for a single orbital factor.
    Vec what(6);
    Bivector gtil(6, 2);
    if (n1 <= 1e-9) {
        what = ss.wp;
        gtil = ss.gamma_p;
    } else {
        const double q = std::sqrt(std::norm(dep_c) + 1.0);
        for (int i = 0; i < 6; ++i) what[i] = (ss.w[i] + dep_c * ss.wp[i]) / q;
        gtil = ss.gamma * cplx{q};
    }

    GeminalForm gf = geminal_canonical(gtil);
    if (gf.coeff.empty()) throw internal_error("lone_orbital: degenerate input with empty geminal");

    if (gf.coeff.size() == 1 || gf.coeff[1] < 1e-10) {
        // Slater-like: the lone orbital hosts the single configuration.
        Mat head = frame_of({what, gf.u[0], gf.v[0]});
        Mat tail = orthogonal_complement(head);
        Mat basis(6, 6);
        basis.set_col(0, head.col(0));      // l1 = what
        basis.set_col(1, tail.col(0));      // l2 free
        basis.set_col(2, head.col(1));      // f1
        basis.set_col(3, head.col(2));      // f2
        basis.set_col(4, tail.col(1));      // g1
        basis.set_col(5, tail.col(2));      // g2
        return assemble(t, basis, labels, rows, signs, Shape::Lone5, "lone_orbital");
    }

    // Two-term geminal: rows B1, B2 carry the state, the lone row is zero.
    Mat basis(6, 6);
    Mat head = frame_of({what, gf.u[0], gf.v[0], gf.u[1], gf.v[1]});
    Mat tail = orthogonal_complement(head);
    basis.set_col(0, tail.col(0)); // l1 free
    basis.set_col(1, head.col(0)); // l2 = what
    basis.set_col(2, head.col(1)); // f1
    basis.set_col(3, head.col(2)); // f2
    basis.set_col(4, head.col(3)); // g1
    basis.set_col(5, head.col(4)); // g2
    return assemble(t, basis, labels, rows, signs, Shape::Lone5, "lone_orbital");
}

// ---------------------------------------------------------------------------
// Borland-Dennis expansion
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::array<int, 3>> kBdConfigs = [] {
    std::vector<std::array<int, 3>> confs;
    for (int a : {0, 5})
        for (int b : {1, 4})
            for (int c : {2, 3}) {
                std::array<int, 3> conf = {a, b, c};
                std::sort(conf.begin(), conf.end());
                confs.push_back(conf);
            }
    std::sort(confs.begin(), confs.end());
    return confs;
}();

// Rotates within the positional pairs (0,5), (1,4), (2,3) so every 2x2 pair
// block of the 1RDM becomes diagonal, then orders pairs by their top
// occupation.
Mat diagonalize_pair_blocks(const Trivector& t, const Mat& paired) {
    Mat gb = paired.adjoint() * one_rdm(t) * paired;
    constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 5}, {1, 4}, {2, 3}}};

    for (const auto& pr : pairs)
        for (const auto& other : pairs) {
            if (pr == other) continue;
            for (int i : pr)
                for (int j : other)
                    if (std::abs(gb(i, j)) > 1e-7)
                        throw internal_error("bd_expansion: 1RDM not block-diagonal on pairs");
        }

    Mat rotated = paired;
    std::array<double, 3> top{};
    std::array<std::array<Vec, 2>, 3> members;
    for (int p = 0; p < 3; ++p) {
        const int i = pairs[p][0], j = pairs[p][1];
        Mat blk(2, 2);
        blk(0, 0) = gb(i, i);
        blk(0, 1) = gb(i, j);
        blk(1, 0) = gb(j, i);
        blk(1, 1) = gb(j, j);
        EigResult eig = hermitian_eig(blk);
        Vec hi(6), lo(6);
        for (int r = 0; r < 6; ++r) {
            hi[r] = rotated(r, i) * eig.vectors(0, 0) + rotated(r, j) * eig.vectors(1, 0);
            lo[r] = rotated(r, i) * eig.vectors(0, 1) + rotated(r, j) * eig.vectors(1, 1);
        }
        top[p] = eig.values[0];
        members[p] = {std::move(hi), std::move(lo)};
    }

    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return top[a] > top[b]; });

    Mat final_basis(6, 6);
    for (int slot = 0; slot < 3; ++slot) {
        final_basis.set_col(slot, members[order[slot]][0]);
        final_basis.set_col(5 - slot, members[order[slot]][1]);
    }
    return final_basis;
}

CIExpansion finish_bd(const Trivector& t, const Mat& paired) {
    Mat basis = diagonalize_pair_blocks(t, paired);
    CIExpansion e = assemble(t, basis, {"h1", "h2", "h3", "h4", "h5", "h6"}, kBdConfigs,
                             std::vector<int>(kBdConfigs.size(), +1), Shape::BD8, "bd_expansion", 1e-9);
    e.drop_zero_terms(1e-10);
    e.sort_terms();
    return e;
}

} // namespace

CIExpansion bd_expansion(const Trivector& t, int start_orbital) {
    if (start_orbital < 0 || start_orbital > 5) throw precondition_error("bd_expansion: start orbital out of range");
    if (t.norm() < 1e-12) {
        CIExpansion e;
        e.shape = Shape::BD8;
        e.basis.labels = {"h1", "h2", "h3", "h4", "h5", "h6"};
        return e;
    }

    const NaturalSpectrum ns = natural_spectrum(t);
    Vec h = to_vec(ns.orbitals.col(start_orbital));
    Bivector gamma = interior(h, t);
    GeminalForm gf = geminal_canonical(gamma);
    const double a1 = gf.coeff.empty() ? 0.0 : gf.coeff[0];
    const double a2 = gf.coeff.size() > 1 ? gf.coeff[1] : 0.0;
    constexpr double rank_tol = 1e-10;

    if (a1 <= rank_tol) {
        // The chosen natural orbital is empty; the state has rank <= 5 and the
        // rank-5 canonical form is already single-occupancy with pairs
        // (w, h), (u1, u2), (v1, v2).
        ThreeInFive f = three_in_five(t);
        Mat paired = frame_of({f.w, f.u1, f.v1, f.v2, f.u2, h});
        if (unitarity_defect(paired) > 1e-9) {
            // h may not be orthogonal to the rank-5 support basis when
            // occupations are degenerate; recompute it as the left-over
            // direction.
            Mat head = frame_of({f.w, f.u1, f.v1, f.v2, f.u2});
            paired = hstack(head, orthogonal_complement(head));
        }
        return finish_bd(t, paired);
    }

    if (a2 <= rank_tol) {
        // Case 2: gamma decomposable.  Reduce the h-free part by the SVD
        // lemma over the reference space orthogonal to {h, f1', f2'}.
        Vec f1p = gf.u[0], f2p = gf.v[0];
        Mat head = frame_of({h, f1p, f2p});
        Mat gframe = orthogonal_complement(head); // g1', g2', g3'
        Multivector c = express_in_basis(t, hstack(head, gframe));

        // Singles block C[i][k] on alpha_i(g-frame) ^ f'_k, 3x2.
        Mat cmat(3, 2);
        for (int k = 0; k < 2; ++k) {
            cmat(0, k) = c.amp(std::array{1 + k, 4, 5});
            cmat(1, k) = -c.amp(std::array{1 + k, 3, 5});
            cmat(2, k) = c.amp(std::array{1 + k, 3, 4});
        }
        SvdResult s = svd(cmat);
        Mat p = conj_mat(s.u); // rotates the g-frame
        Mat q = conj_mat(s.v); // rotates {f1', f2'}
        make_special(p);
        make_special(q);
        Mat gnew = gframe * p;
        Mat fnew = frame_of({f1p, f2p}) * q;

        // Pairs (h, g3), (f1, g1), (f2, g2).
        Mat paired(6, 6);
        paired.set_col(0, std::span<const cplx>(h));
        paired.set_col(1, fnew.col(0));
        paired.set_col(2, fnew.col(1));
        paired.set_col(3, gnew.col(1));
        paired.set_col(4, gnew.col(0));
        paired.set_col(5, gnew.col(2));
        return finish_bd(t, paired);
    }

    // Case 1: gamma has two Schmidt terms.
    Vec f1p = gf.u[0], f2p = gf.v[0], g1p = gf.u[1], g2p = gf.v[1];
    Mat head = frame_of({h, f1p, f2p, g1p, g2p});
    Mat kcol = orthogonal_complement(head);
    Vec k = to_vec(kcol.col(0));

    Multivector c = express_in_basis(t, frame_of({h, k, f1p, f2p, g1p, g2p}));
    Mat m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = c.amp(std::array{1, 2 + i, 4 + j});
    Mat fpair = frame_of({f1p, f2p});
    Mat gpair = frame_of({g1p, g2p});
    rotate_pair_block(fpair, gpair, m);

    // Pairs (h, k), (f1, g2), (f2, g1).
    Mat paired(6, 6);
    paired.set_col(0, std::span<const cplx>(h));
    paired.set_col(1, fpair.col(0));
    paired.set_col(2, fpair.col(1));
    paired.set_col(3, gpair.col(0));
    paired.set_col(4, gpair.col(1));
    paired.set_col(5, std::span<const cplx>(k));
    return finish_bd(t, paired);
}

PairedBasis qubit_subspace(const Trivector& t) { return PairedBasis{bd_expansion(t).basis}; }

} // namespace bd3
