#include "starsurf/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starsurf {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kPi = kTau / 2;

Vec3d sub(const Vec3d& a, const Vec3d& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3d cross(const Vec3d& a, const Vec3d& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm3(const Vec3d& a) { return std::sqrt(dot3(a, a)); }

// signed solid angle of the triangle (a, b, c) seen from the origin
double solid_triangle(const Vec3d& a, const Vec3d& b, const Vec3d& c) {
    double na = norm3(a), nb = norm3(b), nc = norm3(c);
    double num = dot3(a, cross(b, c));
    double den = na * nb * nc + dot3(a, b) * nc + dot3(b, c) * na + dot3(c, a) * nb;
    return 2.0 * std::atan2(num, den);
}

double min_curve_distance(const PolylineCurve& c1, const PolylineCurve& c2) {
    double best = 1e300;
    for (const auto& p : c1.pts) best = std::min(best, distance_to_curve(p, c2));
    for (const auto& p : c2.pts) best = std::min(best, distance_to_curve(p, c1));
    return best;
}

double gauss_sum(const PolylineCurve& c1, const PolylineCurve& c2) {
    double total = 0;
    size_t n1 = c1.pts.size(), n2 = c2.pts.size();
    for (size_t i = 0; i < n1; ++i) {
        const Vec3d& a1 = c1.pts[i];
        const Vec3d& a2 = c1.pts[(i + 1) % n1];
        for (size_t j = 0; j < n2; ++j) {
            const Vec3d& b1 = c2.pts[j];
            const Vec3d& b2 = c2.pts[(j + 1) % n2];
            Vec3d r00 = sub(a1, b1), r01 = sub(a1, b2), r11 = sub(a2, b2), r10 = sub(a2, b1);
            total += solid_triangle(r00, r01, r11) + solid_triangle(r00, r11, r10);
        }
    }
    return total / (2 * kTau);
}

PolylineCurve subdivide(const PolylineCurve& c) {
    PolylineCurve out;
    out.closed = c.closed;
    size_t n = c.pts.size();
    size_t segs = c.closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i) {
        const Vec3d& a = c.pts[i];
        const Vec3d& b = c.pts[(i + 1) % n];
        out.pts.push_back(a);
        out.pts.push_back({(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2});
    }
    if (!c.closed) out.pts.push_back(c.pts.back());
    return out;
}

}  // namespace

LinkingResult linking_number(const PolylineCurve& c1, const PolylineCurve& c2) {
    c1.validate();
    c2.validate();
    if (!c1.closed || !c2.closed)
        throw std::invalid_argument("linking_number: both curves must be closed");
    if (min_curve_distance(c1, c2) <= 1e-6)
        throw std::domain_error("linking_number: curves closer than 1e-6, refine inputs");

    PolylineCurve a = c1, b = c2;
    for (int attempt = 0; attempt < 3; ++attempt) {
        double s = gauss_sum(a, b);
        double rounded = std::round(s);
        double residue = std::abs(s - rounded);
        if (residue < 0.1) return {static_cast<long>(rounded), residue};
        a = subdivide(a);
        b = subdivide(b);
    }
    throw std::domain_error("linking_number: Gauss sum residue stayed >= 0.1");
}

PolylineCurve torus_core(const ProductSurface& surf, const ProjectionSpec& proj, int nu,
                         int nv) {
    StereographicD sp = proj.kind == ProjectionSpec::Kind::stereo ? proj.stereo_float()
                                                                  : StereographicD();
    if (proj.kind != ProjectionSpec::Kind::stereo)
        throw std::invalid_argument("torus_core: stereographic projection required");
    PolylineCurve core;
    core.closed = true;
    for (int iu = 0; iu < nu; ++iu) {
        double alpha = kTau * iu / nu;
        Vec3d centroid{0, 0, 0};
        std::vector<Vec3d> fiber;
        fiber.reserve(nv);
        for (int iv = 0; iv < nv; ++iv) {
            Vec3d p = sp(surf.eval_angles(alpha, kTau * iv / nv));
            for (int k = 0; k < 3; ++k) centroid[k] += p[k];
            fiber.push_back(p);
        }
        for (int k = 0; k < 3; ++k) centroid[k] /= nv;
        double radius = 0;
        for (const auto& p : fiber) radius = std::max(radius, norm3(sub(p, centroid)));
        if (radius < 1e-6)
            throw std::domain_error("torus_core: degenerate fiber (radius < 1e-6)");
        core.pts.push_back(centroid);
    }
    return core;
}

double separation(const ProductSurface& surf, const ProjectionSpec& proj,
                  const PolylineCurve& curve, int grid) {
    if (proj.kind != ProjectionSpec::Kind::stereo)
        throw std::invalid_argument("separation: stereographic projection required");
    StereographicD sp = proj.stereo_float();
    auto dist_at = [&](double a, double b) {
        return distance_to_curve(sp(surf.eval_angles(a, b)), curve);
    };
    double best = 1e300, ba = 0, bb = 0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double a = kTau * i / grid, b = kTau * j / grid;
            double d = dist_at(a, b);
            if (d < best) {
                best = d;
                ba = a;
                bb = b;
            }
        }
    // compass pattern search below grid resolution
    double step = kTau / grid;
    while (step > 1e-9) {
        bool improved = false;
        const double dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : dirs) {
            double a = ba + d[0] * step, b = bb + d[1] * step;
            double v = dist_at(a, b);
            if (v < best) {
                best = v;
                ba = a;
                bb = b;
                improved = true;
            }
        }
        if (!improved) step /= 2;
    }
    return best;
}

TouchingToriReport touching_tori_certificate(const ProductSurface& surf,
                                             const ProjectionSpec& proj) {
    // locate the great factor and the small factor
    CircleR left_plane = plane_form(surf.left);
    CircleR right_plane = plane_form(surf.right);
    const RationalCircleParam* small = nullptr;
    const CircleR* great = nullptr;
    bool small_is_right = false;
    if (left_plane.is_great() && !right_plane.is_great()) {
        great = &left_plane;
        small = &surf.right;
        small_is_right = true;
    } else if (right_plane.is_great() && !left_plane.is_great()) {
        great = &right_plane;
        small = &surf.left;
    } else {
        throw std::domain_error(
            "touching tori: needs exactly one great and one small factor");
    }

    MeetResult meet = meet_great_circle(*small, *great);
    if (meet.q != 2)
        throw std::domain_error(
            meet.q == 1
                ? "touching tori: not applicable, q=1 gives a single annulus glued "
                  "tangentially"
                : "touching tori: not applicable, q=0 means the double circle is isolated");

    // split parameters of the small circle, as angles in [0, 2pi)
    auto angle_of = [](const std::array<double, 2>& r) {
        double t = 2 * std::atan2(r[0], r[1]);
        if (t < 0) t += kTau;
        return t;
    };
    double t1 = angle_of(meet.roots[0]), t2 = angle_of(meet.roots[1]);
    if (t1 > t2) std::swap(t1, t2);

    TouchingToriReport rep;
    rep.split_angles[0] = t1;
    rep.split_angles[1] = t2;

    StereographicD sp = proj.stereo_float();
    auto surf_pt = [&](double a, double t) {
        // a runs over the great factor, t over the small factor
        return sp(small_is_right ? surf.eval_angles(a, t) : surf.eval_angles(t, a));
    };

    const int nu = 96, nt = 48;

    // (i) both boundary fibers trace the common circle
    PolylineCurve boundary1, boundary2;
    boundary1.closed = boundary2.closed = true;
    for (int i = 0; i < 256; ++i) {
        double a = kTau * i / 256;
        boundary1.pts.push_back(surf_pt(a, t1));
        boundary2.pts.push_back(surf_pt(a, t2));
    }
    double ident = hausdorff(boundary1, boundary2);
    rep.checks.push_back({"boundary_circles_identified", ident < 1e-3, ident});

    // (ii) interiors of the two annuli are disjoint
    auto annulus = [&](double lo, double hi) {
        std::vector<Vec3d> pts;
        const double shrink = 0.05;
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nt; ++j) {
                double a = kTau * i / nu;
                double t = lo + (hi - lo) * (shrink + (1 - 2 * shrink) * j / (nt - 1));
                pts.push_back(surf_pt(a, t));
            }
        return pts;
    };
    std::vector<Vec3d> T1 = annulus(t1, t2);
    std::vector<Vec3d> T2 = annulus(t2, t1 + kTau);
    double cross_min = 1e300;
    for (const auto& p : T1)
        for (const auto& q : T2)
            cross_min = std::min(cross_min, dot3(sub(p, q), sub(p, q)));
    cross_min = std::sqrt(cross_min);
    rep.checks.push_back({"annulus_interiors_disjoint", cross_min > 0.05, cross_min});

    // (iii) the two core curves are linked
    auto core_of = [&](double lo, double hi) {
        PolylineCurve core;
        core.closed = true;
        for (int i = 0; i < 256; ++i) {
            double a = kTau * i / 256;
            Vec3d c{0, 0, 0};
            for (int j = 0; j < nt; ++j) {
                double t = lo + (hi - lo) * (j + 0.5) / nt;
                Vec3d p = surf_pt(a, t);
                for (int k = 0; k < 3; ++k) c[k] += p[k];
            }
            for (int k = 0; k < 3; ++k) c[k] /= nt;
            core.pts.push_back(c);
        }
        return core;
    };
    PolylineCurve core1 = core_of(t1, t2);
    PolylineCurve core2 = core_of(t2, t1 + kTau);
    LinkingResult lk = linking_number(core1, core2);
    rep.checks.push_back(
        {"cores_linked", std::abs(lk.value) == 1 && lk.residue < 0.1,
         static_cast<double>(lk.value)});

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

PlaneFit fit_plane(const std::vector<Vec3d>& pts) {
    if (pts.size() < 3) throw std::invalid_argument("fit_plane: need >= 3 points");
    Vec3d mean{0, 0, 0};
    for (const auto& p : pts)
        for (int k = 0; k < 3; ++k) mean[k] += p[k];
    for (int k = 0; k < 3; ++k) mean[k] /= static_cast<double>(pts.size());

    double cov[3][3] = {};
    for (const auto& p : pts) {
        Vec3d d = sub(p, mean);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov[i][j] += d[i] * d[j];
    }
    // Jacobi eigenvalue iteration for the symmetric 3x3
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(cov[0][1]) + std::abs(cov[0][2]) + std::abs(cov[1][2]);
        if (off < 1e-18) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(cov[p][q]) < 1e-30) continue;
                double theta = (cov[q][q] - cov[p][p]) / (2 * cov[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = cov[k][p], akq = cov[k][q];
                    cov[k][p] = c * akp - s * akq;
                    cov[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = cov[p][k], aqk = cov[q][k];
                    cov[p][k] = c * apk - s * aqk;
                    cov[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    int kmin = 0;
    for (int k = 1; k < 3; ++k)
        if (cov[k][k] < cov[kmin][kmin]) kmin = k;
    PlaneFit fit;
    fit.normal = {v[0][kmin], v[1][kmin], v[2][kmin]};
    double n = norm3(fit.normal);
    for (int k = 0; k < 3; ++k) fit.normal[k] /= n;
    fit.offset = dot3(fit.normal, mean);
    fit.residual = 0;
    for (const auto& p : pts)
        fit.residual = std::max(fit.residual, std::abs(dot3(fit.normal, p) - fit.offset));
    return fit;
}

SphereFit fit_sphere(const std::vector<Vec3d>& pts) {
    if (pts.size() < 4) throw std::invalid_argument("fit_sphere: need >= 4 points");
    // algebraic fit |x|^2 + b.x + c = 0 by least squares
    double A[4][4] = {};
    double rhs[4] = {};
    for (const auto& p : pts) {
        double row[4] = {p[0], p[1], p[2], 1.0};
        double y = -dot3(p, p);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) A[i][j] += row[i] * row[j];
            rhs[i] += row[i] * y;
        }
    }
    // solve normal equations; fall back to a plane when singular
    double M[4][5];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) M[i][j] = A[i][j];
        M[i][4] = rhs[i];
    }
    SphereFit fit;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int i = c + 1; i < 4; ++i)
            if (std::abs(M[i][c]) > std::abs(M[piv][c])) piv = i;
        if (std::abs(M[piv][c]) < 1e-12) {
            PlaneFit pf = fit_plane(pts);
            fit.is_plane = true;
            fit.residual = pf.residual;
            return fit;
        }
        std::swap(M[c], M[piv]);
        for (int i = 0; i < 4; ++i) {
            if (i == c) continue;
            double f = M[i][c] / M[c][c];
            for (int j = c; j < 5; ++j) M[i][j] -= f * M[c][j];
        }
    }
    double b[3] = {M[0][4] / M[0][0], M[1][4] / M[1][1], M[2][4] / M[2][2]};
    double cc = M[3][4] / M[3][3];
    fit.center = {-b[0] / 2, -b[1] / 2, -b[2] / 2};
    double r2 = dot3(fit.center, fit.center) - cc;
    if (r2 <= 0 || r2 > 1e16) {
        PlaneFit pf = fit_plane(pts);
        fit.is_plane = true;
        fit.residual = pf.residual;
        return fit;
    }
    fit.radius = std::sqrt(r2);
    fit.residual = 0;
    for (const auto& p : pts)
        fit.residual = std::max(fit.residual, std::abs(norm3(sub(p, fit.center)) - fit.radius));
    return fit;
}

double circle_fit_residual(const std::vector<Vec3d>& pts) {
    PlaneFit pf = fit_plane(pts);
    SphereFit sf = fit_sphere(pts);
    return std::max(pf.residual, sf.residual);
}

}  // namespace starsurf
