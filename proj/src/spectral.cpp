#include "bd3/spectral.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bd3 {

Mat one_rdm(const Trivector& t) {
    if (t.dim() != 6 || t.degree() != 3) throw precondition_error("one_rdm: expects a trivector over C^6");
    Mat g(6, 6);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b <= a; ++b) {
            cplx s{};
            for (int j = 0; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k) {
                    const int ia[3] = {a, j, k};
                    const int ib[3] = {b, j, k};
                    s += t.amp(ia) * std::conj(t.amp(ib));
                }
            g(a, b) = s;
            g(b, a) = std::conj(s);
        }
    return g;
}

NaturalSpectrum natural_spectrum(const Trivector& t) {
    EigResult eig = hermitian_eig(one_rdm(t));

    // Re-orthonormalize within degenerate clusters; downstream code may rely
    // only on the cluster span.
    constexpr double cluster_tol = 1e-8;
    int start = 0;
    while (start < 6) {
        int end = start + 1;
        while (end < 6 && std::abs(eig.values[end] - eig.values[start]) < cluster_tol) ++end;
        if (end - start > 1) {
            Mat cluster(6, end - start);
            for (int c = start; c < end; ++c) cluster.set_col(c - start, eig.vectors.col(c));
            Mat q = orthonormalize(cluster);
            if (q.cols() != end - start) throw internal_error("natural_spectrum: degenerate cluster collapsed");
            for (int c = start; c < end; ++c) eig.vectors.set_col(c, q.col(c - start));
        }
        start = end;
    }

    NaturalSpectrum ns;
    for (int i = 0; i < 6; ++i) ns.lambda[i] = eig.values[i];
    ns.orbitals = std::move(eig.vectors);
    return ns;
}

int rank(const Trivector& t, double tol) {
    const NaturalSpectrum ns = natural_spectrum(t);
    int r = 0;
    for (double l : ns.lambda)
        if (l > tol) ++r;
    if (r == 4 && std::abs(t.norm() - 1.0) < 1e-8)
        throw internal_error("rank: counted 4 occupied natural orbitals for a normalized trivector");
    return r;
}

RepresentabilityReport check_representability(std::array<double, 6> l, double tol) {
    std::sort(l.begin(), l.end(), std::greater<double>());
    RepresentabilityReport rep;
    rep.pair_sums = {l[0] + l[5], l[1] + l[4], l[2] + l[3]};
    rep.inequality_margin = l[4] + l[5] - l[3];
    rep.equalities_ok = true;
    for (double s : rep.pair_sums)
        if (std::abs(s - 1.0) > tol) rep.equalities_ok = false;
    rep.inequality_ok = rep.inequality_margin >= -tol;
    rep.saturated = std::abs(rep.inequality_margin) <= tol;
    return rep;
}

Trivector random_trivector(SplitMix64& rng) {
    Trivector t(6, 3);
    for (int i = 0; i < t.size(); ++i) t[i] = rng.complex_gaussian();
    t *= 1.0 / t.norm();
    return t;
}

} // namespace bd3
