#include "bd3/expansion.hpp"

#include "bd3/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bd3 {

std::array<std::string, 6> OrbitalBasis::default_labels() {
    return {"e1", "e2", "e3", "e4", "e5", "e6"};
}

OrbitalBasis::OrbitalBasis() : cols(Mat::identity(6)), labels(default_labels()) {}

OrbitalBasis::OrbitalBasis(Mat m, std::array<std::string, 6> lab) : cols(std::move(m)), labels(std::move(lab)) {
    if (cols.rows() != 6 || cols.cols() != 6) throw precondition_error("OrbitalBasis: expects a 6x6 matrix");
    if (unitarity_defect(cols) > 1e-12)
        throw precondition_error("OrbitalBasis: columns not orthonormal within 1e-12");
}

OrbitalBasis OrbitalBasis::standard() { return OrbitalBasis(); }

Mat PairedBasis::pair_projector(int p) const {
    Mat proj(6, 6);
    for (int member : pairing[p]) {
        auto v = basis.orbital(member);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) proj(r, c) += v[r] * std::conj(v[c]);
    }
    return proj;
}

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::BD8: return "BD8";
        case Shape::Lone5: return "Lone5";
        case Shape::CIS4: return "CIS4";
        case Shape::CID4: return "CID4";
        case Shape::Slater5: return "Slater5";
        case Shape::CIS5: return "CIS5";
        default: return "General";
    }
}

Trivector CIExpansion::reconstruct() const {
    Trivector t(6, 3);
    for (const auto& term : terms) t += wedge_cols(basis.cols, term.orbitals) * term.coeff;
    return t;
}

double CIExpansion::residual(const Trivector& source) const { return (reconstruct() - source).norm(); }

int CIExpansion::nonzero_terms(double tol) const {
    int n = 0;
    for (const auto& term : terms)
        if (std::abs(term.coeff) >= tol) ++n;
    return n;
}

void CIExpansion::drop_zero_terms(double tol) {
    std::erase_if(terms, [tol](const CITerm& t) { return std::abs(t.coeff) < tol; });
}

void CIExpansion::sort_terms() {
    std::sort(terms.begin(), terms.end(),
              [](const CITerm& a, const CITerm& b) { return a.orbitals < b.orbitals; });
}

CIExpansion full_expansion(const Trivector& t, const OrbitalBasis& basis) {
    CIExpansion e;
    e.basis = basis;
    e.shape = Shape::General;
    Multivector coeffs = express_in_basis(t, basis.cols);
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        e.terms.push_back({idx, coeffs[r]});
    }
    return e;
}

void fix_phases(OrbitalBasis& basis, std::vector<CITerm>& terms, const Trivector& t,
                const std::vector<std::array<int, 3>>& priority) {
    // Constraints sum_{j in K} theta_j = arg(c_K), collected greedily in
    // priority order while rows stay linearly independent; free phases 0.
    std::vector<std::array<double, 6>> rows;
    std::vector<double> rhs;
    std::vector<int> pivots;

    for (const auto& conf : priority) {
        cplx c{};
        for (const auto& term : terms)
            if (term.orbitals == conf) c = term.coeff;
        if (std::abs(c) < 1e-12) continue;

        std::array<double, 6> row{};
        for (int j : conf) row[j] = 1.0;
        double b = std::arg(c);

        // Reduce against accumulated echelon rows.
        for (size_t k = 0; k < rows.size(); ++k) {
            const double f = row[pivots[k]];
            if (f == 0.0) continue;
            for (int j = 0; j < 6; ++j) row[j] -= f * rows[k][j];
            b -= f * rhs[k];
        }
        int piv = -1;
        for (int j = 0; j < 6; ++j)
            if (std::abs(row[j]) > 1e-9) {
                piv = j;
                break;
            }
        if (piv < 0) continue; // phase already determined by earlier rows

        const double scale = row[piv];
        for (int j = 0; j < 6; ++j) row[j] /= scale;
        b /= scale;
        rows.push_back(row);
        rhs.push_back(b);
        pivots.push_back(piv);
    }

    // Back-substitute with free variables at zero.
    std::array<double, 6> theta{};
    for (int k = static_cast<int>(rows.size()) - 1; k >= 0; --k) {
        double v = rhs[k];
        for (int j = 0; j < 6; ++j)
            if (j != pivots[k]) v -= rows[k][j] * theta[j];
        theta[pivots[k]] = v;
    }

    for (int j = 0; j < 6; ++j) scale(basis.cols.col(j), std::polar(1.0, theta[j]));
    for (auto& term : terms) term.coeff = inner(wedge_cols(basis.cols, term.orbitals), t);
}

} // namespace bd3
