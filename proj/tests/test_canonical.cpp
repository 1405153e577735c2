#include "bd3/canonical.hpp"

#include "bd3/errors.hpp"
#include "bd3/qubit3.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bd3;

namespace {

// singular values via the closed-form eigenvalues of the 3x3 Gram matrix
std::array<double, 3> oracle_singular(const Mat& m) {
    auto eigs = oracle::hermitian3_eigs(m.adjoint() * m);
    return {std::sqrt(std::max(0.0, eigs[0])), std::sqrt(std::max(0.0, eigs[1])),
            std::sqrt(std::max(0.0, eigs[2]))};
}

Trivector ghz_form() {
    return (Multivector::basis(6, {0, 1, 2}) + Multivector::basis(6, {3, 4, 5})) * cplx{1.0 / std::sqrt(2.0)};
}

Trivector rank5_state() {
    return (Multivector::basis(6, {0, 1, 2}) + Multivector::basis(6, {0, 3, 4})) * cplx{1.0 / std::sqrt(2.0)};
}

cplx term_coeff(const CIExpansion& e, std::array<int, 3> conf) {
    for (const auto& t : e.terms)
        if (t.orbitals == conf) return t.coeff;
    return {};
}

bool single_occupancy_bd(const CIExpansion& e, double tol = 1e-10) {
    for (const auto& t : e.terms) {
        if (std::abs(t.coeff) < tol) continue;
        for (int p = 0; p < 3; ++p) {
            const int hi = p, lo = 5 - p;
            const int hits = static_cast<int>(std::count(t.orbitals.begin(), t.orbitals.end(), hi)) +
                             static_cast<int>(std::count(t.orbitals.begin(), t.orbitals.end(), lo));
            if (hits != 1) return false;
        }
    }
    return true;
}

// Worst Frobenius distance between the pair-projector sets of two paired
// bases, minimized over pair order.
double pairing_distance(const PairedBasis& a, const PairedBasis& b) {
    std::array<Mat, 3> pa, pb;
    for (int p = 0; p < 3; ++p) {
        pa[p] = a.pair_projector(p);
        pb[p] = b.pair_projector(p);
    }
    std::array<int, 3> perm = {0, 1, 2};
    double best = 1e300;
    do {
        double worst = 0.0;
        for (int p = 0; p < 3; ++p) {
            double d = 0.0;
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c) d += std::norm(pa[p](r, c) - pb[perm[p]](r, c));
            worst = std::max(worst, std::sqrt(d));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("geminal_canonical on basic bivectors") {
    GeminalForm g1 = geminal_canonical(Multivector::basis(6, {0, 1}));
    REQUIRE(g1.coeff.size() == 1);
    CHECK(g1.coeff[0] == doctest::Approx(1.0).epsilon(1e-12));

    Bivector b = (Multivector::basis(6, {0, 1}) + Multivector::basis(6, {2, 3})) * cplx{1.0 / std::sqrt(2.0)};
    GeminalForm g2 = geminal_canonical(b);
    REQUIRE(g2.coeff.size() == 2);
    CHECK(g2.coeff[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(g2.coeff[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK((g2.reconstruct() - b).norm() < 1e-10);
}

TEST_CASE("geminal_canonical of random bivectors") {
    SplitMix64 rng(41);
    for (int dim : {4, 5, 6}) {
        for (int trial = 0; trial < 25; ++trial) {
            Bivector b(dim, 2);
            for (int i = 0; i < b.size(); ++i) b[i] = rng.complex_gaussian();
            GeminalForm g = geminal_canonical(b);
            CHECK(static_cast<int>(g.coeff.size()) <= dim / 2);
            CHECK((g.reconstruct() - b).norm() < 1e-8 * b.norm());
            for (size_t i = 1; i < g.coeff.size(); ++i) CHECK(g.coeff[i - 1] >= g.coeff[i]);

            std::vector<Vec> all;
            for (size_t i = 0; i < g.coeff.size(); ++i) {
                all.push_back(g.u[i]);
                all.push_back(g.v[i]);
            }
            for (size_t i = 0; i < all.size(); ++i)
                for (size_t j = 0; j < all.size(); ++j) {
                    const cplx want = (i == j) ? cplx{1.0} : cplx{};
                    CHECK(std::abs(dot(all[i], all[j]) - want) < 1e-9);
                }
        }
    }
}

TEST_CASE("three_in_five canonical form") {
    ThreeInFive f1 = three_in_five(Multivector::basis(6, {0, 1, 2}));
    CHECK(f1.a1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f1.a2 == doctest::Approx(0.0).epsilon(1e-10));

    ThreeInFive f2 = three_in_five(rank5_state());
    CHECK(f2.a1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(f2.a2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(std::abs(std::abs(f2.w[0]) - 1.0) < 1e-9); // w = e1 up to phase

    CHECK_THROWS_AS(three_in_five(ghz_form()), precondition_error);
}

TEST_CASE("three_in_five recovers the geminal Schmidt coefficients") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Mat u = rng.haar_unitary(6);
        const double a1 = std::sqrt(0.5 + 0.4 * rng.uniform01());
        const double a2 = std::sqrt(1.0 - a1 * a1);
        Trivector t = wedge_cols(u, std::array{0, 1, 2}) * cplx{a1} + wedge_cols(u, std::array{0, 3, 4}) * cplx{a2};

        ThreeInFive f = three_in_five(t);
        CHECK(f.a1 == doctest::Approx(a1).epsilon(1e-9));
        CHECK(f.a2 == doctest::Approx(a2).epsilon(1e-9));

        GeminalForm g = geminal_canonical(interior(f.w, t));
        REQUIRE(g.coeff.size() == 2);
        CHECK(g.coeff[0] == doctest::Approx(a1).epsilon(1e-9));

        Trivector rec = wedge(f.w, wedge(f.u1, f.v1)) * cplx{f.a1} + wedge(f.w, wedge(f.u2, f.v2)) * cplx{f.a2};
        CHECK((rec - t).norm() < 1e-9);
    }
}

TEST_CASE("strong_split splits against compatible orbitals") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        Trivector t = random_trivector(rng);
        StrongSplit s = strong_split(t);
        CHECK(s.residual < 1e-9);
        CHECK(interior(s.w, s.gamma).norm() < 1e-9);
        CHECK(interior(s.wp, s.gamma).norm() < 1e-9);
        CHECK(interior(s.w, s.gamma_p).norm() < 1e-9);
        CHECK(interior(s.wp, s.gamma_p).norm() < 1e-9);
    }
    StrongSplit s = strong_split(ghz_form());
    CHECK(s.residual < 1e-10);
    CHECK(s.degenerate_top);
}

TEST_CASE("svd_reduce_singles basics") {
    SplitMix64 rng(44);
    Mat u = rng.haar_unitary(6);
    Mat ref = u.first_cols(3);

    CIExpansion e1 = svd_reduce_singles(wedge_cols(u, std::array{0, 1, 2}), ref);
    CHECK(e1.shape == Shape::Slater5);
    CHECK(std::abs(term_coeff(e1, {0, 1, 2}) - cplx{1.0}) < 1e-9);
    for (auto conf : {std::array{1, 2, 3}, std::array{0, 2, 4}, std::array{0, 1, 5}, std::array{3, 4, 5}})
        CHECK(std::abs(term_coeff(e1, conf)) < 1e-9);

    Trivector t2 = (wedge_cols(u, std::array{0, 1, 2}) + wedge_cols(u, std::array{3, 4, 5})) *
                   cplx{1.0 / std::sqrt(2.0)};
    CIExpansion e2 = svd_reduce_singles(t2, ref);
    CHECK(std::real(term_coeff(e2, {0, 1, 2})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(std::real(term_coeff(e2, {3, 4, 5})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(e2.residual(t2) < 1e-9);

    Trivector bad = wedge_cols(u, std::array{0, 3, 4});
    CHECK_THROWS_AS(svd_reduce_singles(bad, ref), precondition_error);
}

TEST_CASE("svd_reduce_singles coefficients are the singular values of the singles block") {
    SplitMix64 rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        Mat c = rng.gaussian_matrix(3, 3);
        Trivector t = Multivector::basis(6, {0, 1, 2}) * rng.complex_gaussian() +
                      Multivector::basis(6, {3, 4, 5}) * rng.complex_gaussian();
        for (int k = 0; k < 3; ++k) {
            t.add(std::array{1, 2, 3 + k}, c(0, k));
            t.add(std::array{0, 2, 3 + k}, -c(1, k));
            t.add(std::array{0, 1, 3 + k}, c(2, k));
        }
        t *= 1.0 / t.norm();

        CIExpansion e = svd_reduce_singles(t, Mat::identity(6).first_cols(3));
        CHECK(e.residual(t) < 1e-9);

        // compare against an SVD of the singles block of the normalized state
        Mat cb(3, 3);
        Multivector coeffs = express_in_basis(t, Mat::identity(6));
        for (int k = 0; k < 3; ++k) {
            cb(0, k) = coeffs.amp(std::array{1, 2, 3 + k});
            cb(1, k) = -coeffs.amp(std::array{0, 2, 3 + k});
            cb(2, k) = coeffs.amp(std::array{0, 1, 3 + k});
        }
        auto sv = oracle_singular(cb);
        const double b1 = std::real(term_coeff(e, {1, 2, 3}));
        const double b2 = -std::real(term_coeff(e, {0, 2, 4}));
        const double b3 = std::real(term_coeff(e, {0, 1, 5}));
        CHECK(b1 == doctest::Approx(sv[0]).epsilon(1e-9));
        CHECK(b2 == doctest::Approx(sv[1]).epsilon(1e-9));
        CHECK(b3 == doctest::Approx(sv[2]).epsilon(1e-9));
        CHECK(b1 >= b2);
        CHECK(b2 >= b3);
        CHECK(b3 >= -1e-12);

        // the D row is made real nonnegative; A keeps the left-over phase of
        // the six-phase gauge (only four coefficient phases are adjustable)
        CHECK(std::real(term_coeff(e, {3, 4, 5})) >= -1e-12);
        CHECK(std::abs(std::imag(term_coeff(e, {3, 4, 5}))) < 1e-10);
    }
}

TEST_CASE("cis_canonical recovers planted coefficients") {
    SplitMix64 rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        double b[3];
        b[0] = 0.65 + 0.2 * rng.uniform01();
        b[1] = 0.40 + 0.15 * rng.uniform01();
        b[2] = 0.18 + 0.15 * rng.uniform01();
        double a = 0.3 + 0.4 * rng.uniform01();
        const double n = std::sqrt(a * a + b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        a /= n;
        for (double& x : b) x /= n;

        Mat u = rng.haar_unitary(6);
        Trivector t = wedge_cols(u, std::array{0, 1, 2}) * cplx{a} +
                      wedge_cols(u, std::array{1, 2, 3}) * cplx{b[0]} -
                      wedge_cols(u, std::array{0, 2, 4}) * cplx{b[1]} +
                      wedge_cols(u, std::array{0, 1, 5}) * cplx{b[2]};

        CIExpansion e = cis_canonical(t, u.first_cols(3));
        CHECK(e.shape == Shape::CIS4);
        CHECK(std::real(term_coeff(e, {0, 1, 2})) == doctest::Approx(a).epsilon(1e-8));
        CHECK(std::real(term_coeff(e, {1, 2, 3})) == doctest::Approx(b[0]).epsilon(1e-8));
        CHECK(-std::real(term_coeff(e, {0, 2, 4})) == doctest::Approx(b[1]).epsilon(1e-8));
        CHECK(std::real(term_coeff(e, {0, 1, 5})) == doctest::Approx(b[2]).epsilon(1e-8));
        CHECK(e.residual(t) < 1e-9);

        // coefficient stability across a second scramble
        Mat u2 = rng.haar_unitary(6);
        Trivector t2 = change_basis(t, u2);
        CIExpansion e2 = cis_canonical(t2, u2 * u.first_cols(3));
        CHECK(std::real(term_coeff(e2, {0, 1, 2})) == doctest::Approx(a).epsilon(1e-8));
        CHECK(std::real(term_coeff(e2, {1, 2, 3})) == doctest::Approx(b[0]).epsilon(1e-8));
        CHECK(-std::real(term_coeff(e2, {0, 2, 4})) == doctest::Approx(b[1]).epsilon(1e-8));
        CHECK(std::real(term_coeff(e2, {0, 1, 5})) == doctest::Approx(b[2]).epsilon(1e-8));
    }
}

TEST_CASE("cis_canonical on degenerate inputs") {
    SplitMix64 rng(47);
    Mat u = rng.haar_unitary(6);
    Trivector slater = wedge_cols(u, std::array{0, 1, 2});
    CIExpansion e1 = cis_canonical(slater, u.first_cols(3));
    CHECK(std::real(term_coeff(e1, {0, 1, 2})) == doctest::Approx(1.0).epsilon(1e-9));
    for (auto conf : {std::array{1, 2, 3}, std::array{0, 2, 4}, std::array{0, 1, 5}})
        CHECK(std::abs(term_coeff(e1, conf)) < 1e-9);

    // rank-5 input: the A = 0 family member with B1 = B2 = 1/sqrt(2).
    // Both configurations are singles for R = span{e1, e3, e4}.
    Trivector r5 = rank5_state();
    Mat ref(6, 3);
    ref(0, 0) = 1.0;
    ref(2, 1) = 1.0;
    ref(3, 2) = 1.0;
    CIExpansion e2 = cis_canonical(r5, ref);
    CHECK(std::abs(term_coeff(e2, {0, 1, 2})) < 1e-9);
    CHECK(std::real(term_coeff(e2, {1, 2, 3})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(-std::real(term_coeff(e2, {0, 2, 4})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(std::abs(term_coeff(e2, {0, 1, 5})) < 1e-9);
    CHECK(e2.residual(r5) < 1e-9);

    CHECK_THROWS_AS(cis_canonical(ghz_form(), Mat::identity(6).first_cols(3)), precondition_error);
}

TEST_CASE("cid_canonical recovers planted descending coefficients") {
    SplitMix64 rng(48);
    for (int trial = 0; trial < 20; ++trial) {
        double vals[4];
        vals[0] = 1.0;
        vals[1] = 0.75 + 0.1 * rng.uniform01();
        vals[2] = 0.5 + 0.1 * rng.uniform01();
        vals[3] = 0.2 + 0.1 * rng.uniform01();
        double n = 0.0;
        for (double v : vals) n += v * v;
        for (double& v : vals) v /= std::sqrt(n);

        Mat u = rng.haar_unitary(6);
        Trivector t = wedge_cols(u, std::array{0, 1, 2}) * cplx{vals[0]} +
                      wedge_cols(u, std::array{0, 4, 5}) * cplx{vals[1]} +
                      wedge_cols(u, std::array{1, 3, 5}) * cplx{vals[2]} +
                      wedge_cols(u, std::array{2, 3, 4}) * cplx{vals[3]};

        CIExpansion e = cid_canonical(t, u.first_cols(3));
        CHECK(e.shape == Shape::CID4);
        CHECK(std::real(term_coeff(e, {0, 1, 2})) == doctest::Approx(vals[0]).epsilon(1e-8));
        CHECK(std::real(term_coeff(e, {0, 4, 5})) == doctest::Approx(vals[1]).epsilon(1e-8));
        CHECK(std::real(term_coeff(e, {1, 3, 5})) == doctest::Approx(vals[2]).epsilon(1e-8));
        CHECK(std::real(term_coeff(e, {2, 3, 4})) == doctest::Approx(vals[3]).epsilon(1e-8));
        CHECK(e.residual(t) < 1e-9);

        Mat gb = e.basis.cols.adjoint() * one_rdm(t) * e.basis.cols;
        CHECK(max_abs_offdiag(gb) < 1e-8);
    }
}

TEST_CASE("cid_canonical degenerate and error cases") {
    SplitMix64 rng(49);
    Mat u = rng.haar_unitary(6);
    Trivector slater = wedge_cols(u, std::array{0, 1, 2});
    CIExpansion e1 = cid_canonical(slater, u.first_cols(3));
    CHECK(std::real(term_coeff(e1, {0, 1, 2})) == doctest::Approx(1.0).epsilon(1e-9));

    Trivector eq = (wedge_cols(u, std::array{0, 1, 2}) + wedge_cols(u, std::array{0, 4, 5}) +
                    wedge_cols(u, std::array{1, 3, 5}) + wedge_cols(u, std::array{2, 3, 4})) *
                   cplx{0.5};
    NaturalSpectrum ns = natural_spectrum(eq);
    for (double l : ns.lambda) CHECK(l == doctest::Approx(0.5).epsilon(1e-9));
    CIExpansion e2 = cid_canonical(eq, u.first_cols(3));
    for (const auto& term : e2.terms) CHECK(std::abs(term.coeff) == doctest::Approx(0.5).epsilon(1e-8));

    // the dual configuration {4,5,6} lies outside the CID block of this R
    CHECK_THROWS_AS(cid_canonical(ghz_form(), Mat::identity(6).first_cols(3)), precondition_error);
}

TEST_CASE("lone_orbital expansions on reference states") {
    CIExpansion e1 = lone_orbital(ghz_form());
    CHECK(e1.shape == Shape::Lone5);
    CHECK(e1.nonzero_terms() == 2);
    CHECK(e1.residual(ghz_form()) < 1e-9);

    SplitMix64 rng(50);
    Mat u = rng.haar_unitary(6);
    Trivector slater = wedge_cols(u, std::array{0, 1, 2});
    CIExpansion e2 = lone_orbital(slater);
    CHECK(e2.nonzero_terms() == 1);
    CHECK(std::abs(term_coeff(e2, {0, 2, 3})) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e2.residual(slater) < 1e-9);
}

TEST_CASE("lone_orbital on random states") {
    SplitMix64 rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        Trivector t = random_trivector(rng);
        CIExpansion e = lone_orbital(t);
        CHECK(e.residual(t) < 1e-9);

        int with_l1 = 0;
        for (const auto& term : e.terms)
            if (std::abs(term.coeff) > 1e-10 &&
                std::find(term.orbitals.begin(), term.orbitals.end(), 0) != term.orbitals.end())
                ++with_l1;
        CHECK(with_l1 == 1);

        const double a = std::abs(term_coeff(e, {0, 2, 3}));
        const double b2 = std::abs(term_coeff(e, {1, 4, 5}));
        CHECK(a * a * b2 * b2 == doctest::Approx(hyperdet_modulus(t)).epsilon(1e-7));
    }
}

TEST_CASE("bd_expansion on reference states") {
    SplitMix64 rng(52);
    Mat u = rng.haar_unitary(6);

    CIExpansion e1 = bd_expansion(wedge_cols(u, std::array{0, 1, 2}));
    CHECK(e1.shape == Shape::BD8);
    CHECK(e1.nonzero_terms() == 1);

    CIExpansion e2 = bd_expansion(ghz_form());
    CHECK(e2.nonzero_terms() == 2);
    CHECK(single_occupancy_bd(e2));
    CHECK(e2.residual(ghz_form()) < 1e-9);

    // The balanced state has a fully degenerate spectrum, so the 3-qubit
    // subspace is not unique; what is pinned down is that every pair couples
    // the occupied triad span{e1,e2,e3} to the empty one.
    PairedBasis got{e2.basis};
    Mat pocc(6, 6);
    for (int i = 0; i < 3; ++i) pocc(i, i) = 1.0;
    for (int p = 0; p < 3; ++p) {
        Mat prod = got.pair_projector(p) * pocc;
        cplx tr{};
        for (int i = 0; i < 6; ++i) tr += prod(i, i);
        CHECK(std::abs(tr - cplx{1.0}) < 1e-9);
    }
}

TEST_CASE("bd_expansion on random states") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        Trivector t = random_trivector(rng);
        CIExpansion e = bd_expansion(t);
        CHECK(e.terms.size() <= 8);
        CHECK(single_occupancy_bd(e));
        CHECK(e.residual(t) < 1e-9);

        Mat gb = e.basis.cols.adjoint() * one_rdm(t) * e.basis.cols;
        CHECK(max_abs_offdiag(gb) < 1e-9);

        std::array<double, 6> occ;
        for (int i = 0; i < 6; ++i) occ[i] = std::real(gb(i, i));
        for (int i = 1; i < 3; ++i) CHECK(occ[i - 1] >= occ[i] - 1e-9);
        for (int p = 0; p < 3; ++p) CHECK(occ[p] + occ[5 - p] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("bd_expansion handles rank-deficient states and alternate seeds") {
    CIExpansion e1 = bd_expansion(rank5_state());
    CHECK(single_occupancy_bd(e1));
    CHECK(e1.residual(rank5_state()) < 1e-9);

    CIExpansion e2 = bd_expansion(rank5_state(), 5);
    CHECK(single_occupancy_bd(e2));
    CHECK(e2.residual(rank5_state()) < 1e-9);

    SplitMix64 rng(54);
    Mat u = rng.haar_unitary(6);
    Trivector t2b = wedge_cols(u, std::array{0, 1, 2}) * cplx{0.8} + wedge_cols(u, std::array{3, 4, 5}) * cplx{0.6};
    CIExpansion e3 = bd_expansion(t2b);
    CHECK(e3.nonzero_terms() == 2);
    CHECK(e3.residual(t2b) < 1e-9);
}

TEST_CASE("qubit_subspace is unique for distinct occupations") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        Trivector t = random_trivector(rng);
        PairedBasis a{bd_expansion(t, 0).basis};
        PairedBasis b{bd_expansion(t, 5).basis};
        CHECK(pairing_distance(a, b) < 1e-8);
    }
}

TEST_CASE("qubit_subspace accepts degenerate states") {
    CIExpansion e = bd_expansion(Multivector::basis(6, {0, 1, 2}));
    CHECK(single_occupancy_bd(e));
    PairedBasis pb = qubit_subspace(Multivector::basis(6, {0, 1, 2}));
    CHECK(unitarity_defect(pb.basis.cols) < 1e-10);
}
