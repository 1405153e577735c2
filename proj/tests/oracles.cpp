#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bd3::oracle {

std::array<double, 3> hermitian3_eigs(const Mat& h) {
    // det(H - x I) = -x^3 + c2 x^2 + c1 x + c0 with
    // c2 = tr(H), c1 = -(sum of principal 2x2 minors), c0 = det(H).
    const double tr = std::real(h(0, 0) + h(1, 1) + h(2, 2));
    const double m01 = std::real(h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0));
    const double m02 = std::real(h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0));
    const double m12 = std::real(h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
    const double p1 = m01 + m02 + m12;
    const double det = std::real(det3(h));

    // x^3 - tr x^2 + p1 x - det = 0; depressed with x = y + tr/3.
    const double a = tr / 3.0;
    const double p = p1 - tr * tr / 3.0;
    const double q = -det + tr * p1 / 3.0 - 2.0 * tr * tr * tr / 27.0;
    // y^3 + p y + q = 0, three real roots for Hermitian input.
    const double m = std::sqrt(std::max(0.0, -p / 3.0));
    std::array<double, 3> eig;
    if (m < 1e-150) {
        eig = {a, a, a};
    } else {
        double c = 3.0 * q / (2.0 * p * m);
        c = std::clamp(c, -1.0, 1.0);
        const double phi = std::acos(c) / 3.0;
        for (int k = 0; k < 3; ++k) eig[k] = a + 2.0 * m * std::cos(phi - 2.0 * 3.14159265358979323846 * k / 3.0);
    }
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

namespace {

Mat random_frame(std::mt19937_64& gen, int rows, int cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = {nd(gen), nd(gen)};
    return orthonormalize(m);
}

Mat perturb_frame(std::mt19937_64& gen, const Mat& f, double step) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m = f;
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r) m(r, c) += step * cplx{nd(gen), nd(gen)};
    return orthonormalize(m);
}

// Generic sample-and-polish maximization over orthonormal frames.
template <typename Objective>
double sample_polish(std::mt19937_64& gen, int rows, int cols, int samples, const Objective& value) {
    struct Cand {
        Mat frame;
        double v;
    };
    std::vector<Cand> top;
    const size_t keep = 40;
    for (int s = 0; s < samples; ++s) {
        Mat f = random_frame(gen, rows, cols);
        const double v = value(f);
        if (top.size() < keep || v > top.back().v) {
            top.push_back({std::move(f), v});
            std::sort(top.begin(), top.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });
            if (top.size() > keep) top.pop_back();
        }
    }

    double best = top.empty() ? 0.0 : top.front().v;
    for (auto& cand : top) {
        double step = 0.3;
        int stale = 0;
        while (step > 1e-9 && stale < 400) {
            Mat trial = perturb_frame(gen, cand.frame, step);
            const double v = value(trial);
            if (v > cand.v) {
                cand.frame = std::move(trial);
                cand.v = v;
                stale = 0;
            } else if (++stale % 25 == 0) {
                step *= 0.5;
            }
        }
        best = std::max(best, cand.v);
    }
    return best;
}

} // namespace

double max_slater_overlap(const Trivector& t, int samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const int cols[3] = {0, 1, 2};
    auto value = [&](const Mat& f) { return std::abs(inner(wedge_cols(f, cols), t)); };
    return sample_polish(gen, 6, 3, samples, value);
}

double max_cis_overlap(const Trivector& t, int samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto value = [&](const Mat& f) {
        Mat comp = orthogonal_complement(f);
        Mat full(6, 6);
        for (int c = 0; c < 3; ++c) full.set_col(c, f.col(c));
        for (int c = 0; c < 3; ++c) full.set_col(3 + c, comp.col(c));
        double w = 0.0;
        const int ref[3] = {0, 1, 2};
        w += std::norm(inner(wedge_cols(full, ref), t));
        for (int hole = 0; hole < 3; ++hole)
            for (int g = 3; g < 6; ++g) {
                int conf[3];
                int k = 0;
                for (int i = 0; i < 3; ++i)
                    if (i != hole) conf[k++] = i;
                conf[2] = g;
                w += std::norm(inner(wedge_cols(full, conf), t));
            }
        return std::sqrt(w);
    };
    return sample_polish(gen, 6, 3, samples, value);
}

double max_type4a_overlap(const ThreeQubitState& q, int samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);

    auto random_locals = [&] {
        std::array<Mat, 3> fr;
        for (auto& f : fr) {
            Mat m(2, 2);
            for (int c = 0; c < 2; ++c)
                for (int r = 0; r < 2; ++r) m(r, c) = {nd(gen), nd(gen)};
            f = orthonormalize(m);
        }
        return fr;
    };
    auto value = [&](const std::array<Mat, 3>& fr) {
        LocalUnitary adj;
        for (int i = 0; i < 3; ++i) adj.factors[i] = fr[i].adjoint();
        ThreeQubitState fc = apply_local(adj, q);
        double w = 0.0;
        for (int slot : {0b000, 0b001, 0b010, 0b100}) w += std::norm(fc.amps[slot]);
        return std::sqrt(w);
    };

    struct Cand {
        std::array<Mat, 3> fr;
        double v;
    };
    std::vector<Cand> top;
    const size_t keep = 40;
    for (int s = 0; s < samples; ++s) {
        auto fr = random_locals();
        const double v = value(fr);
        if (top.size() < keep || v > top.back().v) {
            top.push_back({fr, v});
            std::sort(top.begin(), top.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });
            if (top.size() > keep) top.pop_back();
        }
    }
    double best = top.empty() ? 0.0 : top.front().v;
    for (auto& cand : top) {
        double step = 0.3;
        int stale = 0;
        while (step > 1e-9 && stale < 400) {
            std::array<Mat, 3> trial = cand.fr;
            for (auto& f : trial) {
                Mat m = f;
                for (int c = 0; c < 2; ++c)
                    for (int r = 0; r < 2; ++r) m(r, c) += step * cplx{nd(gen), nd(gen)};
                f = orthonormalize(m);
            }
            const double v = value(trial);
            if (v > cand.v) {
                cand.fr = trial;
                cand.v = v;
                stale = 0;
            } else if (++stale % 25 == 0) {
                step *= 0.5;
            }
        }
        best = std::max(best, cand.v);
    }
    return best;
}

} // namespace bd3::oracle
