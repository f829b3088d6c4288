#pragma once

// Rank-2 intersection lattice <l0, l1> with l0^2 = l1^2 = 0, l0.l1 = 1, and
// the genus / delta-invariant bookkeeping formulas over it.

#include <stdexcept>

#include "starsurf/scalar.hpp"

namespace starsurf {

struct DivisorClass {
    long long a = 0, b = 0;  // a*l0 + b*l1

    friend DivisorClass operator+(DivisorClass x, DivisorClass y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend DivisorClass operator-(DivisorClass x) { return {-x.a, -x.b}; }
    friend DivisorClass operator*(long long k, DivisorClass x) { return {k * x.a, k * x.b}; }
    friend bool operator==(DivisorClass x, DivisorClass y) = default;
};

inline long long intersect(DivisorClass c, DivisorClass d) { return c.a * d.b + c.b * d.a; }

inline long long self_intersection(DivisorClass c) { return intersect(c, c); }

// sectional geometric genus 1/2 (c^2 + c.k) + 1; throws when the formula is
// not an integer (invalid class pair)
inline long long arithmetic_genus(DivisorClass c, DivisorClass k) {
    long long t = self_intersection(c) + intersect(c, k);
    if (t % 2 != 0) throw std::domain_error("arithmetic_genus: odd c^2 + c.k");
    return t / 2 + 1;
}

// total delta invariant of a degree-d surface in P^3 from d and h.k
inline Rat delta_P3(long d, long hk) {
    if (d < 1) throw std::invalid_argument("delta_P3: degree must be >= 1");
    return Rat(d) / 2 * Rat(d - 4) - Rat(hk) / 2;
}

// total delta invariant of a degree-d surface in the Moebius quadric
inline Rat delta_S3(long d, long hk) {
    if (d < 1) throw std::invalid_argument("delta_S3: degree must be >= 1");
    return Rat(d) / 2 * (Rat(d) / 2 - 3) - Rat(hk) / 2;
}

}  // namespace starsurf
