#include "bd3/qubit3.hpp"

#include "bd3/errors.hpp"
#include "ascent.hpp"

#include <algorithm>
#include <cmath>

namespace bd3 {

ThreeQubitState ThreeQubitState::basis(int b1, int b2, int b3) {
    ThreeQubitState q;
    q(b1, b2, b3) = 1.0;
    return q;
}

double ThreeQubitState::norm() const {
    double s = 0.0;
    for (auto z : amps) s += std::norm(z);
    return std::sqrt(s);
}

void ThreeQubitState::normalize() {
    const double n = norm();
    if (n == 0.0) return;
    for (auto& z : amps) z /= n;
}

cplx qinner(const ThreeQubitState& a, const ThreeQubitState& b) {
    cplx s{};
    for (int i = 0; i < 8; ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

LocalUnitary LocalUnitary::identity() {
    LocalUnitary lu;
    for (auto& f : lu.factors) f = Mat::identity(2);
    return lu;
}

LocalUnitary LocalUnitary::random(SplitMix64& rng) {
    LocalUnitary lu;
    for (auto& f : lu.factors) f = rng.haar_unitary(2);
    return lu;
}

ThreeQubitState apply_local(const LocalUnitary& lu, const ThreeQubitState& q) {
    for (const auto& f : lu.factors)
        if (f.rows() != 2 || f.cols() != 2 || unitarity_defect(f) > 1e-12)
            throw precondition_error("apply_local: factors must be 2x2 unitaries");

    ThreeQubitState cur = q;
    for (int slot = 0; slot < 3; ++slot) {
        const Mat& u = lu.factors[slot];
        ThreeQubitState next;
        const int stride = 1 << slot;
        for (int b = 0; b < 8; ++b) {
            const int bit = (b >> slot) & 1;
            next.amps[b] = u(bit, 0) * cur.amps[b & ~stride] + u(bit, 1) * cur.amps[b | stride];
        }
        cur = next;
    }
    return cur;
}

Trivector embed(const ThreeQubitState& q) {
    Trivector t(6, 3);
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3) {
                const int conf[3] = {b1, 2 + b2, 4 + b3};
                t.add(conf, q(b1, b2, b3));
            }
    return t;
}

PairedBasis standard_pairing() {
    Mat m(6, 6);
    // positional pairs (0,5), (1,4), (2,3) hold {e1,e2}, {e3,e4}, {e5,e6}
    const int cols[6] = {0, 2, 4, 5, 3, 1};
    for (int c = 0; c < 6; ++c) m(cols[c], c) = 1.0;
    return PairedBasis{OrbitalBasis(std::move(m))};
}

ThreeQubitState unembed(const Trivector& t, const PairedBasis& pb) {
    // Reorder columns as (pair1a, pair1b, pair2a, pair2b, pair3a, pair3b),
    // matching the embedding's (e1, e2, e3, e4, e5, e6).
    Mat reord(6, 6);
    int c = 0;
    for (const auto& pr : PairedBasis::pairing)
        for (int member : pr) reord.set_col(c++, pb.basis.cols.col(member));

    Multivector coeffs = express_in_basis(t, reord);

    ThreeQubitState q;
    double off = 0.0;
    std::array<int, 3> idx;
    for (int r = 0; r < coeffs.size(); ++r) {
        comb_unrank(r, 6, 3, idx);
        // pattern: one index from {0,1}, one from {2,3}, one from {4,5}
        if (idx[0] <= 1 && idx[1] >= 2 && idx[1] <= 3 && idx[2] >= 4)
            q(idx[0], idx[1] - 2, idx[2] - 4) = coeffs[r];
        else
            off += std::norm(coeffs[r]);
    }
    if (std::sqrt(off) > 1e-9)
        throw precondition_error("unembed: off-pattern weight " + std::to_string(std::sqrt(off)) +
                                 " relative to the pairing");
    return q;
}

cplx cayley_hyperdet(const ThreeQubitState& q) {
    auto a = [&](int i, int j, int k) { return q(i, j, k); };
    const cplx sq = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                    a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                    a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                    a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const cplx cross = a(0, 0, 0) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 1) +
                       a(0, 0, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 1) +
                       a(0, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 1) +
                       a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 0) +
                       a(0, 0, 1) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 0) +
                       a(0, 1, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 0, 1);
    const cplx quad = a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) +
                      a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0) * a(1, 1, 1);
    return sq - 2.0 * cross + 4.0 * quad;
}

double hyperdet_modulus(const Trivector& t) {
    CIExpansion bd = bd_expansion(t);
    if (bd.terms.empty()) return 0.0;
    return std::abs(cayley_hyperdet(unembed(t, PairedBasis{bd.basis})));
}

// ---------------------------------------------------------------------------
// max-overlap Type-4a approximation
// ---------------------------------------------------------------------------

namespace {

// e^{K} for K = [[0, -conj(x)], [x, 0]] (K^2 = -|x|^2 I).
Mat expk(cplx x) {
    const double th = std::abs(x);
    Mat m = Mat::identity(2);
    if (th < 1e-300) return m;
    const double c = std::cos(th), s = std::sin(th) / th;
    m(0, 0) = c;
    m(1, 1) = c;
    m(0, 1) = -std::conj(x) * s;
    m(1, 0) = x * s;
    return m;
}

ThreeQubitState to_frame_coords(const std::array<Mat, 3>& frames, const ThreeQubitState& q) {
    LocalUnitary adj;
    for (int i = 0; i < 3; ++i) adj.factors[i] = frames[i].adjoint();
    return apply_local(adj, q);
}

// Type-4a slots in frame coordinates: reference plus single bit flips.
constexpr std::array<int, 4> kKeepSlots = {0b000, 0b001, 0b010, 0b100};
constexpr std::array<int, 3> kDSlots = {0b011, 0b101, 0b110}; // mixed doubles

double kept_weight(const ThreeQubitState& fc) {
    double s = 0.0;
    for (int slot : kKeepSlots) s += std::norm(fc.amps[slot]);
    return s;
}

struct Type4aState {
    std::array<Mat, 3> frames;
    double value; // kept weight = overlap^2
};

// Single ascent run from the given frames.
Type4aState ascend_type4a(const ThreeQubitState& q, std::array<Mat, 3> frames, double* worst_gain) {
    auto eval_frames = [&](const std::array<Mat, 3>& fr) { return kept_weight(to_frame_coords(fr, q)); };

    double value = eval_frames(frames);
    for (int iter = 0; iter < 500; ++iter) {
        ThreeQubitState fc = to_frame_coords(frames, q);
        ThreeQubitState phi, perp;
        for (int b = 0; b < 8; ++b) {
            const bool keep = std::find(kKeepSlots.begin(), kKeepSlots.end(), b) != kKeepSlots.end();
            (keep ? phi.amps[b] : perp.amps[b]) = fc.amps[b];
        }

        // Gradient wrt the mixing parameter x_i of qubit i:
        //   d(value) = -2 Re< phi, K' psi_perp >,  K' = x E - conj(x) E^H,
        //   E = |g><f| on slot i.
        std::array<cplx, 3> grad;
        double gnorm2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            const int stride = 1 << i;
            cplx p{}, r{};
            for (int b = 0; b < 8; ++b) {
                if (((b >> i) & 1) == 1) p += std::conj(phi.amps[b]) * perp.amps[b & ~stride]; // E
                else r += std::conj(phi.amps[b]) * perp.amps[b | stride];                      // E^H
            }
            const double du = 2.0 * (std::real(r) - std::real(p));
            const double dv = 2.0 * (std::imag(p) + std::imag(r));
            grad[i] = {du, dv};
            gnorm2 += du * du + dv * dv;
        }
        if (gnorm2 < 1e-26) break;
        const double gn = std::sqrt(gnorm2);

        auto stepped = [&](double tstep) {
            std::array<Mat, 3> fr = frames;
            for (int i = 0; i < 3; ++i) fr[i] = fr[i] * expk(grad[i] * (tstep / gn));
            return fr;
        };
        LineSearchResult ls = line_search_max(value, [&](double tt) { return eval_frames(stepped(tt)); });
        if (worst_gain) *worst_gain = std::min(*worst_gain, ls.value - value);
        if (ls.value - value < 1e-12) break;
        frames = stepped(ls.t);
        value = ls.value;
    }
    return {frames, value};
}

} // namespace

Type4aResult max_overlap_type4a(const ThreeQubitState& q, int restarts, std::uint64_t seed) {
    if (std::abs(q.norm() - 1.0) > 1e-10) throw precondition_error("max_overlap_type4a: input not normalized");
    if (restarts < 1) restarts = 1;

    Type4aState best{{Mat::identity(2), Mat::identity(2), Mat::identity(2)}, -1.0};
    double worst_gain = 0.0;
    for (int rs = 0; rs < restarts; ++rs) {
        std::array<Mat, 3> frames;
        if (rs == 0) {
            frames = {Mat::identity(2), Mat::identity(2), Mat::identity(2)};
        } else {
            SplitMix64 rng = SplitMix64::substream(seed, rs);
            for (auto& f : frames) f = rng.haar_unitary(2);
        }
        Type4aState run = ascend_type4a(q, frames, &worst_gain);
        if (run.value > best.value) best = run;
    }

    ThreeQubitState fc = to_frame_coords(best.frames, q);
    const double s = std::sqrt(kept_weight(fc));

    ThreeQubitState chi_fc;
    for (int slot : kKeepSlots) chi_fc.amps[slot] = fc.amps[slot];
    if (s > 0.0)
        for (auto& z : chi_fc.amps) z /= s;
    LocalUnitary lu;
    lu.factors = best.frames;
    ThreeQubitState chi = apply_local(lu, chi_fc);

    const cplx ov = qinner(chi, q);
    if (std::abs(ov) > 0.0)
        for (auto& z : chi.amps) z *= ov / std::abs(ov);

    Type4aResult res;
    res.approximant = chi;
    res.overlap = std::abs(ov);
    res.restarts_used = restarts;
    res.frames = best.frames;

    // Theorem certificate: psi = s chi + C g1 g2 g3, mixed doubles vanish.
    const cplx c_coeff = fc.amps[0b111];
    ThreeQubitState recon = chi;
    for (auto& z : recon.amps) z *= res.overlap;
    ThreeQubitState ggg_fc;
    ggg_fc.amps[0b111] = c_coeff;
    ThreeQubitState ggg = apply_local(lu, ggg_fc);
    double resid = 0.0;
    for (int b = 0; b < 8; ++b) resid += std::norm(q.amps[b] - recon.amps[b] - ggg.amps[b]);

    res.certificate["d1"] = std::abs(fc.amps[kDSlots[0]]);
    res.certificate["d2"] = std::abs(fc.amps[kDSlots[1]]);
    res.certificate["d3"] = std::abs(fc.amps[kDSlots[2]]);
    res.certificate["decomposition_residual"] = std::sqrt(resid);
    res.certificate["parseval_defect"] = std::abs(std::norm(c_coeff) - (1.0 - res.overlap * res.overlap));
    res.certificate["worst_ascent_gain"] = worst_gain;
    return res;
}

ThreeQubitState random_qubit_state(SplitMix64& rng) {
    ThreeQubitState q;
    for (auto& z : q.amps) z = rng.complex_gaussian();
    q.normalize();
    return q;
}

} // namespace bd3
