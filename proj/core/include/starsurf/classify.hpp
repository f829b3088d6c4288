#pragma once

// Great-type classification of a product surface from its two generating
// circles. The intersection count q of the small circle with the great
// double circle decides the type: q=2 -> I, q=1 tangential -> II, q=0 -> III.
//
// When the great circle does not pass through the identity quaternion the
// pair is first moved by the left Clifford translation u = a^-1 (a a rational
// point of the great circle), which puts the great factor into subgroup
// position; the count is then taken against the translated great circle.
// This is provably the double circle's position for pairs that are
// simultaneous Clifford images of the normal forms, which is the supported
// input family.

#include <optional>

#include "starsurf/circles.hpp"
#include "starsurf/topology.hpp"

namespace starsurf {

enum class GreatType { I, II, III };

inline const char* great_type_name(GreatType t) {
    switch (t) {
        case GreatType::I: return "I";
        case GreatType::II: return "II";
        case GreatType::III: return "III";
    }
    return "?";
}

struct ClassifyResult {
    GreatType type;
    int q = 0;
    bool tangent = false;
    bool reduced = false;      // a Clifford translation was applied
    QuatR translation{Rat(1), Rat(0), Rat(0), Rat(0)};  // the applied u
    std::vector<CertificateCheck> checks;
};

// `great` must parametrize a great circle and `small` a small one; throws
// std::invalid_argument otherwise (both great: the Clifford-torus family,
// degree 4, has no I/II/III type; both small: unsupported).
ClassifyResult classify(const RationalCircleParam& great, const RationalCircleParam& small);

}  // namespace starsurf
