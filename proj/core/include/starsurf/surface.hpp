#pragma once

// Product surfaces Z = A * B: the pointwise Hamilton product of two circle
// parametrizations, as an exact rational map on the parameter torus.

#include <vector>

#include "starsurf/binform.hpp"
#include "starsurf/circles.hpp"
#include "starsurf/mesh.hpp"
#include "starsurf/projection.hpp"

namespace starsurf {

enum class Side { left_times_right, right_times_left };

struct ProductSurface {
    RationalCircleParam left, right;
    Side side = Side::left_times_right;

    // sigma coordinates: bidegree (2,2) numerators in (u:s),(v:w) over a
    // common positive denominator
    std::array<BiForm, 4> num;
    BiForm den;

    // exact construction; verifies the on-sphere identity and rejects
    // degenerate products that collapse to a curve
    static ProductSurface build(const RationalCircleParam& a, const RationalCircleParam& b,
                                Side side);

    // float evaluation caches, filled by build()
    CircleEvalD left_fast, right_fast;

    QuatR eval(const Rat& u, const Rat& s, const Rat& v, const Rat& w) const;
    QuatD evalf(double u, double s, double v, double w) const;
    QuatD eval_angles(double alpha, double beta) const;
    // point plus partial derivatives with respect to both angles
    void eval_angles_jet(double alpha, double beta, QuatD& p, QuatD& da, QuatD& db) const;

    bool on_sphere_certificate() const;

    // the circle traced at a fixed left parameter (a Clifford translate of
    // the right circle), exact
    RationalCircleParam small_fiber(const Rat& u, const Rat& s) const;
    // the circle traced at a fixed right parameter
    RationalCircleParam great_fiber(const Rat& v, const Rat& w) const;
};

// quad mesh of the projected surface; row-major (u,v) vertex order
Mesh sample_grid(const ProductSurface& surf, int nu, int nv, const ProjectionSpec& proj);

// ---- hyperplane sections ----

struct SectionComponent {
    enum class Kind {
        great_branch,            // fixed left-parameter root: a vertical fiber
        double_circle_branch,    // fixed right-parameter root: the double circle
        isolated_double_circle,  // right factor has no real roots
        traced                   // numerically traced branch (marching squares)
    };
    Kind kind;
    std::array<double, 2> root{};  // the fixed (v,w) parameter, |.| = 1
    int multiplicity = 1;
    std::vector<Vec4d> points;  // curve samples on S^3
};

struct SectionResult {
    bool exact_split = false;
    BinForm left_factor;   // f(u,s), primitive (valid when exact_split)
    BinForm right_factor;  // g(v,w), primitive (valid when exact_split)
    std::vector<SectionComponent> components;
};

// Solves n . sigma = d * den on the parameter torus. When the section
// polynomial splits as f(u,s) * g(v,w) over Q the branches are returned
// exactly; otherwise they are traced by marching squares.
SectionResult hyperplane_section(const ProductSurface& surf, const Vec4<Rat>& n, const Rat& d);

// ---- real double curve ----

struct DoubleCurveOptions {
    int search_grid = 256;       // parameter grid for the pair search
    double bucket = 1e-4;        // spatial bucket size
    double residual_tol = 1e-8;  // accepted collision residual on S^3
    double min_param_sep = 1e-3; // below this a refined pair counts as tangential
    int target_points = 1024;    // densification target per closed curve
};

struct DoubleCurveComponent {
    PolylineCurve image;   // projected curve
    bool tangential = false;
};

// Locates parameter pairs p1 != p2 with sigma(p1) = sigma(p2) (collisions on
// S^3), chains them into closed curves and returns their projections. Empty
// when no real double curve is visible at the sampling resolution.
std::vector<DoubleCurveComponent> double_curve(const ProductSurface& surf,
                                               const ProjectionSpec& proj,
                                               const DoubleCurveOptions& opts = {});

}  // namespace starsurf
