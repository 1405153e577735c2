#pragma once

#include "bd3/classify.hpp"
#include "bd3/expansion.hpp"
#include "bd3/qubit3.hpp"

#include <map>
#include <optional>
#include <string>

namespace bd3 {

// JSON state files.  Amplitudes are listed on strictly increasing 1-based
// orbital triples; missing triples are zero.  When a "basis" (6x6 complex,
// row-major) is present the amplitudes refer to its columns, and loading
// rotates the state back to the standard frame.  Numbers are written with 17
// significant digits so the decimal round trip is bit-faithful.

Trivector load_state(const std::string& path);
void save_state(const Trivector& t, const std::string& path,
                const std::map<std::string, std::string>& metadata = {});
void save_expansion(const CIExpansion& e, const std::string& path,
                    const std::map<std::string, std::string>& metadata = {});

// Qubit state files: amplitudes on bitstrings "b1b2b3".
ThreeQubitState load_qubit_state(const std::string& path);
void save_qubit_state(const ThreeQubitState& q, const std::string& path);

// Seeded generator; with a class tag the result is built from that class's
// configuration diagram on a Haar-random basis, with coefficient margins
// that keep the tag detectable.  Throws std::invalid_argument on unknown
// tags (the CLI validates names before calling).
Trivector random_state(std::uint64_t seed, const std::optional<TypeTag>& tag = std::nullopt);

// %.*g formatting with "-0" normalized to "0".
std::string format_sig(double x, int digits);
std::string json_complex(double re, double im); // {"re": ..., "im": ...} at 17 digits

} // namespace bd3
