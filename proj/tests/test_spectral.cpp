#include "bd3/spectral.hpp"

#include "bd3/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace bd3;

namespace {

Trivector ghz_form() {
    return (Multivector::basis(6, {0, 1, 2}) + Multivector::basis(6, {3, 4, 5})) * cplx{1.0 / std::sqrt(2.0)};
}

Trivector rank5_state() {
    // e1 ^ (e2^e3 + e4^e5) / sqrt(2)
    return (Multivector::basis(6, {0, 1, 2}) + Multivector::basis(6, {0, 3, 4})) * cplx{1.0 / std::sqrt(2.0)};
}

} // namespace

TEST_CASE("one_rdm of a Slater determinant") {
    Mat g = one_rdm(Multivector::basis(6, {0, 1, 2}));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double want = (i == j && i < 3) ? 1.0 : 0.0;
            CHECK(std::abs(g(i, j) - want) < 1e-14);
        }
}

TEST_CASE("one_rdm of the balanced two-configuration state is 1/2") {
    Mat g = one_rdm(ghz_form());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double want = (i == j) ? 0.5 : 0.0;
            CHECK(std::abs(g(i, j) - want) < 1e-14);
        }
}

TEST_CASE("one_rdm is Hermitian with trace 3, and diagonal entries are occupation sums") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Trivector t = random_trivector(rng);
        Mat g = one_rdm(t);
        CHECK(is_hermitian(g, 1e-12));
        cplx tr{};
        for (int i = 0; i < 6; ++i) tr += g(i, i);
        CHECK(std::abs(tr - cplx{3.0}) < 1e-10);

        // diagonal entry = total weight of configurations containing the orbital
        for (int a = 0; a < 6; ++a) {
            double direct = 0.0;
            std::array<int, 3> idx;
            for (int r = 0; r < t.size(); ++r) {
                comb_unrank(r, 6, 3, idx);
                if (idx[0] == a || idx[1] == a || idx[2] == a) direct += std::norm(t[r]);
            }
            CHECK(std::abs(g(a, a) - direct) < 1e-12);
        }
    }
}

TEST_CASE("one_rdm transforms covariantly under basis change") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        Trivector t = random_trivector(rng);
        Mat u = rng.haar_unitary(6);
        Mat lhs = one_rdm(change_basis(t, u));
        Mat rhs = u * one_rdm(t) * u.adjoint();
        double worst = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("natural_spectrum on reference states") {
    NaturalSpectrum s1 = natural_spectrum(Multivector::basis(6, {0, 1, 2}));
    const double want1[6] = {1, 1, 1, 0, 0, 0};
    for (int i = 0; i < 6; ++i) CHECK(s1.lambda[i] == doctest::Approx(want1[i]).epsilon(1e-12));

    NaturalSpectrum s2 = natural_spectrum(rank5_state());
    const double want2[6] = {1, 0.5, 0.5, 0.5, 0.5, 0};
    for (int i = 0; i < 6; ++i) CHECK(s2.lambda[i] == doctest::Approx(want2[i]).epsilon(1e-10));
}

TEST_CASE("natural_spectrum of a two-configuration state") {
    SplitMix64 rng(33);
    const double a = 0.8, c = 0.6;
    Mat u = rng.haar_unitary(6);
    const int c123[3] = {0, 1, 2}, c456[3] = {3, 4, 5};
    Trivector t = wedge_cols(u, c123) * cplx{a} + wedge_cols(u, c456) * cplx{c};
    NaturalSpectrum s = natural_spectrum(t);
    for (int i = 0; i < 3; ++i) CHECK(s.lambda[i] == doctest::Approx(a * a).epsilon(1e-10));
    for (int i = 3; i < 6; ++i) CHECK(s.lambda[i] == doctest::Approx(c * c).epsilon(1e-10));
}

TEST_CASE("occupation constraints hold for random states") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        NaturalSpectrum s = natural_spectrum(random_trivector(rng));
        CHECK(std::abs(s.lambda[0] + s.lambda[5] - 1.0) < 1e-9);
        CHECK(std::abs(s.lambda[1] + s.lambda[4] - 1.0) < 1e-9);
        CHECK(std::abs(s.lambda[2] + s.lambda[3] - 1.0) < 1e-9);
        CHECK(s.lambda[3] <= s.lambda[4] + s.lambda[5] + 1e-9);
        double sum = 0.0;
        for (double l : s.lambda) {
            CHECK(l > -1e-10);
            CHECK(l < 1.0 + 1e-10);
            sum += l;
        }
        CHECK(std::abs(sum - 3.0) < 1e-10);
    }
}

TEST_CASE("check_representability") {
    RepresentabilityReport r1 = check_representability({1, 1, 1, 0, 0, 0});
    CHECK(r1.equalities_ok);
    CHECK(r1.inequality_ok);
    CHECK(r1.saturated);
    CHECK(r1.inequality_margin == doctest::Approx(0.0));

    RepresentabilityReport r2 = check_representability({0.9, 0.8, 0.7, 0.3, 0.2, 0.1});
    CHECK(r2.equalities_ok);
    CHECK(r2.inequality_ok);
    CHECK(r2.saturated);

    RepresentabilityReport r3 = check_representability({0.9, 0.9, 0.9, 0.1, 0.1, 0.1});
    CHECK(r3.equalities_ok);
    CHECK(r3.inequality_ok);
    CHECK_FALSE(r3.saturated);
    CHECK(r3.inequality_margin == doctest::Approx(0.1));

    RepresentabilityReport r4 = check_representability({1, 1, 0.5, 0.5, 0, 0});
    CHECK(r4.equalities_ok);
    CHECK_FALSE(r4.inequality_ok);
    CHECK(r4.inequality_margin == doctest::Approx(-0.5));

    // unsorted input is sorted first
    RepresentabilityReport r5 = check_representability({0.1, 0.9, 0.8, 0.2, 0.7, 0.3});
    CHECK(r5.equalities_ok);
    CHECK(r5.inequality_ok);
}

TEST_CASE("rank on reference states") {
    CHECK(rank(Multivector::basis(6, {0, 1, 2})) == 3);
    CHECK(rank(ghz_form()) == 6);
    CHECK(rank(rank5_state()) == 5);
    CHECK(rank(Trivector(6, 3)) == 0);
}

TEST_CASE("random_trivector is normalized and deterministic") {
    SplitMix64 a(7), b(7);
    Trivector ta = random_trivector(a);
    Trivector tb = random_trivector(b);
    CHECK(ta.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((ta - tb).norm() == 0.0);
}
