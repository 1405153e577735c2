#pragma once

#include "bd3/max_overlap.hpp"
#include "bd3/qubit3.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace bd3 {

enum class Gl6Class { Separable, Biseparable, W, GHZ };

std::string gl6_name(Gl6Class c);

enum class TypeTag {
    Type1,
    Type2a,
    Type2b,
    Type3a,
    Type3b,
    CIS,
    CID,
    OrthoW,
    OrthoGHZ,
    LowRank,
};

std::string tag_name(TypeTag t);
std::optional<TypeTag> tag_from_name(const std::string& name);

using TypeTags = std::set<TypeTag>;

struct InvariantReport {
    double m1 = 0.0;                     // norm^2
    std::array<double, 3> sym123{};      // elementary symmetric polynomials of
                                         // lambda1*lambda6, lambda2*lambda5, lambda3*lambda4
    double hyperdet_mod2 = 0.0;          // squared modulus of the hyperdeterminant
    int rank = 0;
    Gl6Class gl6 = Gl6Class::Separable;
    std::optional<TypeTags> tags;        // filled only when requested
    bool borderline = false;             // any classification quantity near its threshold
    // The auxiliary invariants that depend on the 2RDM are deliberately
    // absent rather than zero-filled.
};

// Numeric invariants, rank and GL(6) class.  Fast; no optimizer runs.
InvariantReport invariants(const Trivector& t);

Gl6Class gl6_class(const Trivector& t);

// Expansion-type tags.  CID detection runs the CID optimizer with the given
// budget and must see overlap > 1 - 1e-8.
TypeTags detect_types(const Trivector& t, int restarts = 16, std::uint64_t seed = 0);

// invariants() plus tags.
InvariantReport full_report(const Trivector& t, int restarts = 16, std::uint64_t seed = 0);

} // namespace bd3
