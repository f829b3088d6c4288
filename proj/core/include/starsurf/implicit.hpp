#pragma once

// Exact rational implicitization of projected product surfaces: seeded
// rational sampling, fraction-free kernel computation of the monomial
// evaluation matrix, minimal-degree certification, and the gradient test
// used for singular-locus certificates.

#include <cstdint>
#include <vector>

#include "starsurf/projection.hpp"
#include "starsurf/surface.hpp"

namespace starsurf {

struct MonomialBasis {
    int nvars = 3;            // 3 affine variables or 4 homogeneous
    int degree = 0;           // max total degree (affine) / exact degree (homogeneous)
    bool homogeneous = false;
    std::vector<std::array<int, 4>> monos;  // graded lexicographic

    static MonomialBasis affine3(int dmax);
    static MonomialBasis homogeneous4(int d);

    int size() const { return static_cast<int>(monos.size()); }
    // number of affine monomials of total degree <= d (prefix in grlex order)
    int prefix_size(int d) const;
};

struct ImplicitPoly {
    MonomialBasis basis;
    std::vector<Int> coeffs;  // primitive integers, first nonzero positive

    bool is_zero() const;
    Rat eval(const std::array<Rat, 4>& x) const;      // x[3] ignored when affine
    double evalf(const std::array<double, 4>& x) const;
    std::array<Rat, 4> gradient(const std::array<Rat, 4>& x) const;
};

// sampled exact points of the projected surface: affine 3-space rows for
// stereographic projections, integer homogeneous 4-tuples for the central one
struct RationalSamples {
    bool homogeneous = false;
    std::vector<std::array<Rat, 4>> pts;
};

// seeded, deterministic, all points distinct; parameter heights stay small to
// keep the elimination tractable (bounded well below 40)
RationalSamples rational_samples(const ProductSurface& surf, const ProjectionSpec& proj,
                                 int count, std::uint64_t seed);

// exact kernel basis of the evaluation matrix (all polynomials in the basis
// vanishing on every sample); requires |points| >= basis.size() + 40
std::vector<ImplicitPoly> vanishing_kernel(const RationalSamples& pts,
                                           const MonomialBasis& basis);

struct DegreeCertificate {
    int degree = 0;
    int kernel_dim = 0;
    std::vector<int> dims_below;  // kernel dimensions at degrees 1..degree-1
    ImplicitPoly poly;
};

// smallest degree <= d_max with a nonzero kernel; the witness polynomial is
// re-verified against 50 fresh seeded samples before being returned
DegreeCertificate certify_degree(const ProductSurface& surf, const ProjectionSpec& proj,
                                 int d_max, std::uint64_t seed = kDefaultSeed);

// true iff every partial derivative of poly vanishes exactly at each point;
// throws if poly itself does not vanish at some point (not a surface point)
bool gradient_vanishes_on(const ImplicitPoly& poly,
                          const std::vector<std::array<Rat, 4>>& points);

}  // namespace starsurf
