#pragma once

// Sampled geometry: polyline curves, quad-grid meshes over the parameter
// torus, OBJ/PLY export, Euler characteristic.

#include <iosfwd>
#include <vector>

#include "starsurf/quat.hpp"

namespace starsurf {

struct PolylineCurve {
    std::vector<Vec3d> pts;
    bool closed = true;

    void validate() const;  // consecutive points distinct; closed needs >= 8
    double length() const;
};

// distance from a point to the polyline (segments included)
double distance_to_curve(const Vec3d& x, const PolylineCurve& c);
// directed/symmetric Hausdorff distances between vertex sets and segments
double hausdorff(const PolylineCurve& a, const PolylineCurve& b);

struct Mesh {
    int dim = 3;  // 3 for stereographic images, 4 for unprojected/central
    std::vector<Vec4d> vertices;
    std::vector<std::vector<int>> faces;
    std::vector<std::array<double, 2>> uv;  // per-vertex parameter provenance
    bool torus_grid = false;
};

// V - E + F; throws if the mesh is not closed (some edge not shared by
// exactly two faces)
long euler_characteristic(const Mesh& m);

void write_obj(const Mesh& m, std::ostream& os);
void write_ply(const Mesh& m, std::ostream& os);

}  // namespace starsurf
