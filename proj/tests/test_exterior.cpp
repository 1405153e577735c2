#include "bd3/exterior.hpp"

#include "bd3/errors.hpp"
#include "bd3/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace bd3;

namespace {

Vec unit_random(SplitMix64& rng) {
    Vec v = rng.gaussian_vector(6);
    scale(v, 1.0 / norm(v));
    return v;
}

} // namespace

TEST_CASE("sort_sign counts transpositions and detects repeats") {
    int a[3] = {0, 1, 2};
    CHECK(sort_sign(a) == 1);
    int b[3] = {1, 0, 2};
    CHECK(sort_sign(b) == -1);
    CHECK(b[0] == 0);
    int c[3] = {2, 1, 0};
    CHECK(sort_sign(c) == -1);
    int d[3] = {1, 1, 2};
    CHECK(sort_sign(d) == 0);
}

TEST_CASE("wedge basics") {
    Multivector e1 = Multivector::basis(6, {0});
    Multivector e2 = Multivector::basis(6, {1});
    Multivector e23 = Multivector::basis(6, {1, 2});
    Multivector e123 = Multivector::basis(6, {0, 1, 2});

    CHECK(wedge(e1, e1).norm() == 0.0);
    CHECK(inner(e123, wedge(e1, e23)) == cplx{1.0});

    // (e2 ^ e1) ^ e3 = -e1^e2^e3
    Multivector e21 = wedge(e2, e1);
    Multivector res = wedge(e21, Multivector::basis(6, {2}));
    CHECK(inner(e123, res) == cplx{-1.0});
}

TEST_CASE("wedge is bilinear and graded-commutative") {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        Multivector v(6, 1), w(6, 1), b(6, 2), t(6, 3);
        for (int i = 0; i < v.size(); ++i) v[i] = rng.complex_gaussian();
        for (int i = 0; i < w.size(); ++i) w[i] = rng.complex_gaussian();
        for (int i = 0; i < b.size(); ++i) b[i] = rng.complex_gaussian();
        for (int i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();

        // degree (1,1): anticommute
        CHECK((wedge(v, w) + wedge(w, v)).norm() < 1e-12);
        // degree (1,2): commute
        CHECK((wedge(v, b) - wedge(b, v)).norm() < 1e-12);
        // degree (1,3): anticommute
        CHECK((wedge(v, t) + wedge(t, v)).norm() < 1e-12);
        // degree (2,2): commute
        Multivector b2(6, 2);
        for (int i = 0; i < b2.size(); ++i) b2[i] = rng.complex_gaussian();
        CHECK((wedge(b, b2) - wedge(b2, b)).norm() < 1e-12);

        // bilinearity spot check
        const cplx s = rng.complex_gaussian();
        CHECK((wedge(v * s, b) - wedge(v, b) * s).norm() < 1e-12);
    }
}

TEST_CASE("wedge rejects degree overflow") {
    Multivector t(6, 3), q(6, 4);
    CHECK_THROWS_AS(wedge(t, q), precondition_error);
}

TEST_CASE("inner on configurations") {
    Multivector e123 = Multivector::basis(6, {0, 1, 2});
    Multivector e124 = Multivector::basis(6, {0, 1, 3});
    CHECK(inner(e123, e123) == cplx{1.0});
    CHECK(inner(e123, e124) == cplx{0.0});
    CHECK_THROWS_AS(inner(e123, Multivector::basis(6, {0, 1})), precondition_error);
}

TEST_CASE("inner equals the cross-Gram determinant on decomposables") {
    SplitMix64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        Mat f = rng.haar_frame(6, 3);
        Mat g = rng.haar_frame(6, 3);
        const int cols[3] = {0, 1, 2};
        const cplx lhs = inner(wedge_cols(f, cols), wedge_cols(g, cols));
        Mat gram(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gram(i, j) = dot(f.col(i), g.col(j));
        CHECK(std::abs(lhs - det3(gram)) < 1e-12);
    }
}

TEST_CASE("interior product basics") {
    Vec e1(6), e4(6);
    e1[0] = 1.0;
    e4[3] = 1.0;
    Multivector e123 = Multivector::basis(6, {0, 1, 2});
    Multivector e23 = Multivector::basis(6, {1, 2});

    CHECK((interior(e1, e123) - e23).norm() < 1e-15);
    CHECK(interior(e4, e123).norm() == 0.0);
}

TEST_CASE("interior is adjoint to wedging") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Vec v = rng.gaussian_vector(6);
        Multivector b(6, 2), t(6, 3);
        for (int i = 0; i < b.size(); ++i) b[i] = rng.complex_gaussian();
        for (int i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();
        CHECK(std::abs(inner(wedge(v, b), t) - inner(b, interior(v, t))) < 1e-12);
    }
}

TEST_CASE("interior extracts the geminal factor") {
    SplitMix64 rng(24);
    Mat f = rng.haar_frame(6, 6);
    const cplx a = 0.6, b = 0.8;
    Trivector t = wedge(f.col(0), wedge(f.col(1), f.col(2))) * a + wedge(f.col(3), wedge(f.col(4), f.col(5))) * b;
    Multivector got = interior(f.col(0), t);
    Multivector want = wedge(f.col(1), f.col(2)) * a;
    CHECK((got - want).norm() < 1e-12);
}

TEST_CASE("change_basis on identity and decomposables") {
    SplitMix64 rng(25);
    Trivector t(6, 3);
    for (int i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();

    CHECK((change_basis(t, Mat::identity(6)) - t).norm() < 1e-15);

    Mat u = rng.haar_unitary(6);
    Multivector e123 = Multivector::basis(6, {0, 1, 2});
    const int cols[3] = {0, 1, 2};
    CHECK((change_basis(e123, u) - wedge_cols(u, cols)).norm() < 1e-12);
}

TEST_CASE("change_basis preserves norms and inner products") {
    SplitMix64 rng(26);
    for (int trial = 0; trial < 100; ++trial) {
        Trivector s(6, 3), t(6, 3);
        for (int i = 0; i < s.size(); ++i) s[i] = rng.complex_gaussian();
        for (int i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();
        Mat u = rng.haar_unitary(6);
        CHECK(std::abs(change_basis(t, u).norm() - t.norm()) < 1e-10);
        CHECK(std::abs(inner(change_basis(s, u), change_basis(t, u)) - inner(s, t)) < 1e-10);
    }
}

TEST_CASE("change_basis rejects non-unitary matrices") {
    Mat u = Mat::identity(6);
    u(0, 0) = 2.0;
    Trivector t = Multivector::basis(6, {0, 1, 2});
    CHECK_THROWS_AS(change_basis(t, u), precondition_error);
}

TEST_CASE("is_decomposable") {
    Bivector e12 = Multivector::basis(6, {0, 1});
    CHECK(is_decomposable(e12));

    Bivector mixed = (Multivector::basis(6, {0, 1}) + Multivector::basis(6, {2, 3})) * cplx{1.0 / std::sqrt(2.0)};
    CHECK_FALSE(is_decomposable(mixed));

    CHECK(is_decomposable(Bivector(6, 2))); // zero: vacuously decomposable

    SplitMix64 rng(27);
    for (int trial = 0; trial < 30; ++trial) {
        Vec u = rng.gaussian_vector(6), v = rng.gaussian_vector(6);
        CHECK(is_decomposable(wedge(u, v)));

        Mat f = rng.haar_frame(6, 4);
        const double c1 = 0.1 + 0.9 * rng.uniform01();
        const double c2 = 0.1 + 0.9 * rng.uniform01();
        Bivector schmidt = wedge(f.col(0), f.col(1)) * c1 + wedge(f.col(2), f.col(3)) * c2;
        schmidt *= 1.0 / schmidt.norm();
        CHECK_FALSE(is_decomposable(schmidt));
    }
}

TEST_CASE("decomposable_in_span") {
    Bivector e12 = Multivector::basis(4, {0, 1});
    Bivector e13 = Multivector::basis(4, {0, 2});
    Bivector e34 = Multivector::basis(4, {2, 3});
    Bivector g1 = e12 + e34;

    // decomposable first argument: early exit
    CHECK((decomposable_in_span(e12, e13) - e12).norm() < 1e-15);

    // generic quadratic root
    Bivector z1 = decomposable_in_span(g1, e13);
    CHECK(is_decomposable(z1, 1e-10));
    CHECK(z1.norm() > 1e-8);

    // symmetric cancellation: g1 + g2 proportional to e12
    Bivector g2 = e12 - e34;
    Bivector z2 = decomposable_in_span(g1, g2);
    CHECK(is_decomposable(z2, 1e-10));
    Bivector expected = e12 * z2.amp(std::array{0, 1});
    CHECK((z2 - expected).norm() < 1e-10);

    CHECK_THROWS_AS(decomposable_in_span(g1, g1 * cplx{2.0}), precondition_error);
}

TEST_CASE("one_body_apply obeys the Leibniz rule on decomposables") {
    SplitMix64 rng(28);
    Mat a = rng.gaussian_matrix(6, 6);
    Vec x = rng.gaussian_vector(6), y = rng.gaussian_vector(6), z = rng.gaussian_vector(6);
    Trivector t = wedge(x, wedge(y, z));
    Trivector want = wedge(matvec(a, x), wedge(y, z)) + wedge(x, wedge(matvec(a, y), z)) +
                     wedge(x, wedge(y, matvec(a, z)));
    CHECK((one_body_apply(a, t) - want).norm() < 1e-10);
}
