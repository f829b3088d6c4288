#include "starsurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace starsurf {

void PolylineCurve::validate() const {
    if (closed && pts.size() < 8)
        throw std::invalid_argument("PolylineCurve: closed curve needs >= 8 vertices");
    size_t n = pts.size();
    size_t last = closed ? n : n - 1;
    for (size_t i = 0; i < last; ++i) {
        const Vec3d& a = pts[i];
        const Vec3d& b = pts[(i + 1) % n];
        if (a[0] == b[0] && a[1] == b[1] && a[2] == b[2])
            throw std::invalid_argument("PolylineCurve: consecutive points coincide");
    }
}

double PolylineCurve::length() const {
    double acc = 0;
    size_t n = pts.size();
    size_t segs = closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i) {
        const Vec3d& a = pts[i];
        const Vec3d& b = pts[(i + 1) % n];
        acc += std::hypot(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
    }
    return acc;
}

namespace {

double point_segment_dist(const Vec3d& x, const Vec3d& a, const Vec3d& b) {
    Vec3d d{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    Vec3d r{x[0] - a[0], x[1] - a[1], x[2] - a[2]};
    double dd = dot3(d, d);
    double t = dd > 0 ? std::clamp(dot3(r, d) / dd, 0.0, 1.0) : 0.0;
    return std::hypot(r[0] - t * d[0], r[1] - t * d[1], r[2] - t * d[2]);
}

}  // namespace

double distance_to_curve(const Vec3d& x, const PolylineCurve& c) {
    double best = 1e300;
    size_t n = c.pts.size();
    size_t segs = c.closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_dist(x, c.pts[i], c.pts[(i + 1) % n]));
    return best;
}

double hausdorff(const PolylineCurve& a, const PolylineCurve& b) {
    double worst = 0;
    for (const auto& p : a.pts) worst = std::max(worst, distance_to_curve(p, b));
    for (const auto& p : b.pts) worst = std::max(worst, distance_to_curve(p, a));
    return worst;
}

long euler_characteristic(const Mesh& m) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& f : m.faces) {
        size_t k = f.size();
        if (k < 3) throw std::invalid_argument("euler_characteristic: degenerate face");
        for (size_t i = 0; i < k; ++i) {
            int a = f[i], b = f[(i + 1) % k];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [e, cnt] : edge_count)
        if (cnt != 2)
            throw std::domain_error("euler_characteristic: mesh is not closed");
    long V = static_cast<long>(m.vertices.size());
    long E = static_cast<long>(edge_count.size());
    long F = static_cast<long>(m.faces.size());
    return V - E + F;
}

void write_obj(const Mesh& m, std::ostream& os) {
    os << "# starsurf mesh, " << m.vertices.size() << " vertices, " << m.faces.size()
       << " faces\n";
    os.precision(17);
    for (const auto& v : m.vertices) {
        os << "v " << v[0] << " " << v[1] << " " << v[2];
        if (m.dim == 4) os << " " << v[3];
        os << "\n";
    }
    for (const auto& f : m.faces) {
        os << "f";
        for (int idx : f) os << " " << idx + 1;
        os << "\n";
    }
}

void write_ply(const Mesh& m, std::ostream& os) {
    os << "ply\nformat ascii 1.0\n";
    os << "element vertex " << m.vertices.size() << "\n";
    os << "property double x\nproperty double y\nproperty double z\n";
    if (m.dim == 4) os << "property double w\n";
    os << "element face " << m.faces.size() << "\n";
    os << "property list uchar int vertex_indices\n";
    os << "end_header\n";
    os.precision(17);
    for (const auto& v : m.vertices) {
        os << v[0] << " " << v[1] << " " << v[2];
        if (m.dim == 4) os << " " << v[3];
        os << "\n";
    }
    for (const auto& f : m.faces) {
        os << f.size();
        for (int idx : f) os << " " << idx;
        os << "\n";
    }
}

}  // namespace starsurf
