#pragma once

// Numerical topology certificates: Gauss linking numbers, torus core curves,
// separation margins, the touching-tori decomposition for type I, and the
// small fitting utilities (plane/sphere/circle residuals) they depend on.

#include <string>
#include <vector>

#include "starsurf/mesh.hpp"
#include "starsurf/surface.hpp"

namespace starsurf {

struct LinkingResult {
    long value = 0;
    double residue = 0.0;  // distance of the Gauss sum from the nearest integer
};

// Gauss double sum over segment pairs (analytic solid angles), rounded to the
// nearest integer. Throws when the curves come closer than 1e-6, or when the
// residue stays >= 0.1 after adaptive subdivision.
LinkingResult linking_number(const PolylineCurve& c1, const PolylineCurve& c2);

// closed curve of per-fiber centroids of the projected small-circle family
PolylineCurve torus_core(const ProductSurface& surf, const ProjectionSpec& proj,
                         int nu = 256, int nv = 256);

// minimum distance from the projected sample grid to the curve, with local
// pattern-search refinement below grid resolution
double separation(const ProductSurface& surf, const ProjectionSpec& proj,
                  const PolylineCurve& curve, int grid = 256);

struct CertificateCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
};

struct TouchingToriReport {
    bool pass = false;
    double split_angles[2] = {0, 0};
    std::vector<CertificateCheck> checks;
};

// Type-I certificate: splits the parameter torus at the two intersection
// parameters of the small circle with the double circle, then verifies that
// the two annulus images are closed patches glued exactly along the common
// circle, have disjoint interiors, and have mutually linked cores.
TouchingToriReport touching_tori_certificate(const ProductSurface& surf,
                                             const ProjectionSpec& proj);

// ---- fitting utilities ----

struct PlaneFit {
    Vec3d normal{};
    double offset = 0;    // plane: normal . x = offset
    double residual = 0;  // max |normal . x - offset|
};
PlaneFit fit_plane(const std::vector<Vec3d>& pts);

struct SphereFit {
    Vec3d center{};
    double radius = 0;
    double residual = 0;  // max | |x-c| - r |
    bool is_plane = false;  // fit degenerated to a plane (infinite radius)
};
SphereFit fit_sphere(const std::vector<Vec3d>& pts);

// max of plane residual and sphere-or-plane residual: a circle in R^3 is the
// intersection of a plane with a sphere (or a second plane)
double circle_fit_residual(const std::vector<Vec3d>& pts);

}  // namespace starsurf
