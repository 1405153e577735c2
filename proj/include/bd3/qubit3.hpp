#pragma once

#include "bd3/canonical.hpp"
#include "bd3/expansion.hpp"
#include "bd3/rng.hpp"

#include <array>
#include <map>
#include <string>

namespace bd3 {

// Three-qubit state: 8 amplitudes indexed by bitstrings, bit 0 = qubit 1.
// amp[b] multiplies |b1 b2 b3> with b = b1 + 2*b2 + 4*b3.
struct ThreeQubitState {
    std::array<cplx, 8> amps{};

    static ThreeQubitState basis(int b1, int b2, int b3);

    cplx& operator()(int b1, int b2, int b3) { return amps[b1 + 2 * b2 + 4 * b3]; }
    const cplx& operator()(int b1, int b2, int b3) const { return amps[b1 + 2 * b2 + 4 * b3]; }

    double norm() const;
    void normalize();
};

cplx qinner(const ThreeQubitState& a, const ThreeQubitState& b); // conj-linear in a

struct LocalUnitary {
    std::array<Mat, 3> factors; // one 2x2 unitary per qubit

    static LocalUnitary identity();
    static LocalUnitary random(SplitMix64& rng);
};

ThreeQubitState apply_local(const LocalUnitary& lu, const ThreeQubitState& q);

// Isometric embedding into the Borland-Dennis space:
// |b1 b2 b3>  ->  e_{1+b1} ^ e_{3+b2} ^ e_{5+b3}.
Trivector embed(const ThreeQubitState& q);

// Inverse of the embedding relative to a paired basis: qubit i distinguishes
// the two members of pair i, first member = bit 0.  Errors when t carries
// off-pattern weight above 1e-9.
ThreeQubitState unembed(const Trivector& t, const PairedBasis& pb);

// The paired basis matching the standard embedding (pairs {e1,e2}, {e3,e4},
// {e5,e6}).
PairedBasis standard_pairing();

// Cayley hyperdeterminant of the 2x2x2 amplitude array:
//   Det = a000^2 a111^2 + a001^2 a110^2 + a010^2 a101^2 + a100^2 a011^2
//       - 2 (a000 a001 a110 a111 + a000 a010 a101 a111 + a000 a100 a011 a111
//            + a001 a010 a101 a110 + a001 a100 a011 a110 + a010 a100 a011 a101)
//       + 4 (a000 a011 a101 a110 + a001 a010 a100 a111).
// Only the modulus is a local-unitary invariant; the phase is gauge.
cplx cayley_hyperdet(const ThreeQubitState& q);

// |hyperdeterminant| of a trivector, evaluated through its Borland-Dennis
// expansion.
double hyperdet_modulus(const Trivector& t);

struct Type4aResult {
    ThreeQubitState approximant; // phase fixed so the overlap is real positive
    double overlap = 0.0;
    int restarts_used = 0;
    std::map<std::string, double> certificate;
    std::array<Mat, 3> frames;   // columns (f_i, g_i) per qubit
};

// Max-overlap approximation by states of the form
// A f1 f2 f3 + B1 g1 f2 f3 + B2 f1 g2 f3 + B3 f1 f2 g3 over local frames.
Type4aResult max_overlap_type4a(const ThreeQubitState& q, int restarts, std::uint64_t seed);

ThreeQubitState random_qubit_state(SplitMix64& rng);

} // namespace bd3
