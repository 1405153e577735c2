#pragma once

#include "bd3/linalg.hpp"

#include <cstdint>

namespace bd3 {

// SplitMix64 (Steele, Lea, Flood 2014).  Output n is mix64(seed + n*GAMMA),
// a pure function of the counter, so streams are reproducible from the seed
// alone and easy to re-implement in another language.
//
//   GAMMA = 0x9E3779B97F4A7C15
//   mix64: z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
//          z *= 0x94D049BB133111EB; z ^= z>>31;
class SplitMix64 {
public:
    static constexpr std::uint64_t GAMMA = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix64(std::uint64_t z);

    std::uint64_t next();

    // Substream k of a seed: SplitMix64(mix64(seed) + (k+1)*GAMMA).
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t k);

    double uniform01();        // in (0, 1]
    double gaussian();         // N(0, 1), Box-Muller, one value per two draws
    cplx complex_gaussian();   // Re, Im ~ N(0, 1)

    Vec gaussian_vector(int n);
    Mat gaussian_matrix(int rows, int cols);
    Mat haar_unitary(int n);             // QR of a Gaussian matrix
    Mat haar_frame(int rows, int cols);  // first `cols` columns of a Haar unitary

private:
    std::uint64_t state_;
};

} // namespace bd3
