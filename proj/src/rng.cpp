#include "bd3/rng.hpp"

#include <cmath>

namespace bd3 {

std::uint64_t SplitMix64::mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t SplitMix64::next() {
    state_ += GAMMA;
    return mix64(state_);
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t k) {
    return SplitMix64(mix64(seed) + (k + 1) * GAMMA);
}

double SplitMix64::uniform01() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

cplx SplitMix64::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

Vec SplitMix64::gaussian_vector(int n) {
    Vec v(n);
    for (auto& z : v) z = complex_gaussian();
    return v;
}

Mat SplitMix64::gaussian_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = complex_gaussian();
    return m;
}

Mat SplitMix64::haar_unitary(int n) {
    // MGS QR with positive diagonal of R makes Q Haar-distributed.
    return orthonormalize(gaussian_matrix(n, n));
}

Mat SplitMix64::haar_frame(int rows, int cols) {
    return orthonormalize(gaussian_matrix(rows, cols));
}

} // namespace bd3
