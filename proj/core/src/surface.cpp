#include "starsurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "starsurf/linalg.hpp"

namespace starsurf {

namespace {

// circles as plane pairs span a 2-dim space of affine forms; equality of the
// spanned spaces means equality of the circles
bool same_circle(const CircleR& a, const CircleR& b) {
    RatMatrix m = {
        {a.n1[0], a.n1[1], a.n1[2], a.n1[3], -a.d1},
        {a.n2[0], a.n2[1], a.n2[2], a.n2[3], -a.d2},
        {b.n1[0], b.n1[1], b.n1[2], b.n1[3], -b.d1},
        {b.n2[0], b.n2[1], b.n2[2], b.n2[3], -b.d2},
    };
    return rref(m).size() == 2;
}

}  // namespace

ProductSurface ProductSurface::build(const RationalCircleParam& a,
                                     const RationalCircleParam& b, Side side) {
    if (!a.on_sphere_certificate() || !b.on_sphere_certificate())
        throw std::invalid_argument("ProductSurface: factor is not on S^3");

    ProductSurface surf;
    surf.left = a;
    surf.right = b;
    surf.side = side;

    // lift a to bidegree (2,0) and b to (0,2), then multiply symbolically
    auto lift_left = [](const BinForm& f) {
        BiForm out(2, 0);
        for (int i = 0; i <= 2; ++i) out.at(i, 0) = f.c[i];
        return out;
    };
    auto lift_right = [](const BinForm& f) {
        BiForm out(0, 2);
        for (int j = 0; j <= 2; ++j) out.at(0, j) = f.c[j];
        return out;
    };
    Quat<BiForm> qa{lift_left(a.num[0]), lift_left(a.num[1]), lift_left(a.num[2]),
                    lift_left(a.num[3])};
    Quat<BiForm> qb{lift_right(b.num[0]), lift_right(b.num[1]), lift_right(b.num[2]),
                    lift_right(b.num[3])};
    Quat<BiForm> prod = (side == Side::left_times_right) ? hamilton(qa, qb) : hamilton(qb, qa);
    surf.num = {prod.w, prod.x, prod.y, prod.z};
    surf.den = lift_left(a.den) * lift_right(b.den);

    if (!surf.on_sphere_certificate())
        throw std::logic_error("ProductSurface: on-sphere identity failed");

    surf.left_fast = make_eval(a);
    surf.right_fast = make_eval(b);

    // degenerate product: all small fibers coincide, the image is a curve
    CircleR f0 = plane_form(surf.small_fiber(rat(0), rat(1)));
    CircleR f1 = plane_form(surf.small_fiber(rat(1), rat(1)));
    if (same_circle(f0, f1))
        throw std::domain_error("ProductSurface: degenerate product collapses to a curve");
    return surf;
}

QuatR ProductSurface::eval(const Rat& u, const Rat& s, const Rat& v, const Rat& w) const {
    Rat d = den.eval(u, s, v, w);
    if (d == 0) throw std::domain_error("ProductSurface: denominator vanished");
    return {num[0].eval(u, s, v, w) / d, num[1].eval(u, s, v, w) / d,
            num[2].eval(u, s, v, w) / d, num[3].eval(u, s, v, w) / d};
}

QuatD ProductSurface::evalf(double u, double s, double v, double w) const {
    QuatD qa = left_fast.evalf(u, s);
    QuatD qb = right_fast.evalf(v, w);
    return side == Side::left_times_right ? hamilton(qa, qb) : hamilton(qb, qa);
}

QuatD ProductSurface::eval_angles(double alpha, double beta) const {
    QuatD qa = left_fast.eval_angle(alpha);
    QuatD qb = right_fast.eval_angle(beta);
    return side == Side::left_times_right ? hamilton(qa, qb) : hamilton(qb, qa);
}

void ProductSurface::eval_angles_jet(double alpha, double beta, QuatD& p, QuatD& da,
                                     QuatD& db) const {
    QuatD qa, dqa, qb, dqb;
    left_fast.eval_angle_jet(alpha, qa, dqa);
    right_fast.eval_angle_jet(beta, qb, dqb);
    if (side == Side::left_times_right) {
        p = hamilton(qa, qb);
        da = hamilton(dqa, qb);
        db = hamilton(qa, dqb);
    } else {
        p = hamilton(qb, qa);
        da = hamilton(qb, dqa);
        db = hamilton(dqb, qa);
    }
}

bool ProductSurface::on_sphere_certificate() const {
    BiForm sum(4, 4);
    for (const auto& n : num) sum = sum + n * n;
    return sum == den * den;
}

RationalCircleParam ProductSurface::small_fiber(const Rat& u, const Rat& s) const {
    QuatR a = left.eval(u, s);
    Mat4<Rat> m = (side == Side::left_times_right) ? left_mult_matrix(a) : right_mult_matrix(a);
    return right.transformed(m);
}

RationalCircleParam ProductSurface::great_fiber(const Rat& v, const Rat& w) const {
    QuatR b = right.eval(v, w);
    Mat4<Rat> m = (side == Side::left_times_right) ? right_mult_matrix(b) : left_mult_matrix(b);
    return left.transformed(m);
}

// ---- meshing ----

Mesh sample_grid(const ProductSurface& surf, int nu, int nv, const ProjectionSpec& proj) {
    if (nu < 8 || nv < 8) throw std::invalid_argument("sample_grid: nu, nv must be >= 8");

    const bool stereo = proj.kind == ProjectionSpec::Kind::stereo;
    QuatR center = proj.center;

    if (stereo) {
        // exact membership probe at small rational parameter grid points
        for (long pu = -4; pu <= 4; ++pu)
            for (long pv = -4; pv <= 4; ++pv) {
                QuatR q = surf.eval(rat(pu), rat(1), rat(pv), rat(1));
                if (q == center)
                    throw std::domain_error("sample_grid: projection center lies on the surface");
            }
    }

    StereographicD sp = stereo ? proj.stereo_float() : StereographicD();
    QuatD cf{to_double(center.w), to_double(center.x), to_double(center.y),
             to_double(center.z)};

    Mesh mesh;
    mesh.dim = stereo ? 3 : 4;
    mesh.torus_grid = true;
    mesh.vertices.reserve(static_cast<size_t>(nu) * nv);
    mesh.uv.reserve(static_cast<size_t>(nu) * nv);

    constexpr double kTau = 6.283185307179586476925286766559;
    // float proximity check for the pole
    if (stereo) {
        double min_d2 = 1e300;
        for (int iu = 0; iu < nu; ++iu)
            for (int iv = 0; iv < nv; ++iv) {
                QuatD q = surf.eval_angles(kTau * iu / nu, kTau * iv / nv);
                QuatD d = q - cf;
                min_d2 = std::min(min_d2, dot(d, d));
            }
        if (min_d2 < 1e-12)
            throw std::domain_error("sample_grid: projection center on or near the surface");
    }

    for (int iu = 0; iu < nu; ++iu) {
        for (int iv = 0; iv < nv; ++iv) {
            double alpha = kTau * iu / nu, beta = kTau * iv / nv;
            QuatD q = surf.eval_angles(alpha, beta);
            Vec4d vert{};
            if (stereo) {
                Vec3d p = sp(q);
                vert = {p[0], p[1], p[2], 0.0};
            } else {
                // central projection: emit the unit R^4 representative (the
                // antipodal double cover of the image in P^3)
                vert = {q.w, q.x, q.y, q.z};
            }
            mesh.vertices.push_back(vert);
            mesh.uv.push_back({alpha, beta});
        }
    }
    for (int iu = 0; iu < nu; ++iu)
        for (int iv = 0; iv < nv; ++iv) {
            int iu1 = (iu + 1) % nu, iv1 = (iv + 1) % nv;
            mesh.faces.push_back(
                {iu * nv + iv, iu1 * nv + iv, iu1 * nv + iv1, iu * nv + iv1});
        }
    return mesh;
}

// ---- hyperplane sections ----

namespace {

std::vector<Vec4d> sample_fixed_right(const ProductSurface& surf, double rv, double rw,
                                      int n = 128) {
    std::vector<Vec4d> pts;
    pts.reserve(n);
    constexpr double kTau = 6.283185307179586;
    for (int i = 0; i < n; ++i) {
        double alpha = kTau * i / n;
        QuatD a = surf.left.eval_angle(alpha);
        QuatD b = surf.right.evalf(rv, rw);
        QuatD q = surf.side == Side::left_times_right ? hamilton(a, b) : hamilton(b, a);
        pts.push_back({q.w, q.x, q.y, q.z});
    }
    return pts;
}

std::vector<Vec4d> sample_fixed_left(const ProductSurface& surf, double lv, double lw,
                                     int n = 128) {
    std::vector<Vec4d> pts;
    pts.reserve(n);
    constexpr double kTau = 6.283185307179586;
    for (int i = 0; i < n; ++i) {
        double beta = kTau * i / n;
        QuatD a = surf.left.evalf(lv, lw);
        QuatD b = surf.right.eval_angle(beta);
        QuatD q = surf.side == Side::left_times_right ? hamilton(a, b) : hamilton(b, a);
        pts.push_back({q.w, q.x, q.y, q.z});
    }
    return pts;
}

// marching squares on the parameter torus for h(alpha,beta) = 0
std::vector<SectionComponent> marching_squares(const ProductSurface& surf,
                                               const Vec4<Rat>& n, const Rat& d, int grid) {
    constexpr double kTau = 6.283185307179586;
    Vec4d nf{to_double(n[0]), to_double(n[1]), to_double(n[2]), to_double(n[3])};
    double df = to_double(d);
    auto h = [&](int iu, int iv) {
        QuatD q = surf.eval_angles(kTau * iu / grid, kTau * iv / grid);
        return nf[0] * q.w + nf[1] * q.x + nf[2] * q.y + nf[3] * q.z - df;
    };
    std::vector<std::vector<double>> val(grid, std::vector<double>(grid));
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) val[i][j] = h(i, j);

    // collect zero-crossing points per cell and chain greedily
    std::vector<Vec4d> crossings;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            int i1 = (i + 1) % grid, j1 = (j + 1) % grid;
            auto edge = [&](double a, double b, double ua, double va, double ub, double vb) {
                if ((a > 0) == (b > 0)) return;
                // bisect the sign change along the edge
                double lo = 0, hi = 1, flo = a;
                for (int it = 0; it < 60; ++it) {
                    double mid = (lo + hi) / 2;
                    QuatD q = surf.eval_angles(ua + mid * (ub - ua), va + mid * (vb - va));
                    double fm = nf[0] * q.w + nf[1] * q.x + nf[2] * q.y + nf[3] * q.z - df;
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                double t = (lo + hi) / 2;
                QuatD q = surf.eval_angles(ua + t * (ub - ua), va + t * (vb - va));
                crossings.push_back({q.w, q.x, q.y, q.z});
            };
            double u0 = kTau * i / grid, u1 = kTau * (i + 1) / grid;
            double v0 = kTau * j / grid, v1 = kTau * (j + 1) / grid;
            edge(val[i][j], val[i1][j], u0, v0, u1, v0);
            edge(val[i][j], val[i][j1], u0, v0, u0, v1);
        }
    std::vector<SectionComponent> comps;
    if (crossings.empty()) return comps;
    SectionComponent c;
    c.kind = SectionComponent::Kind::traced;
    c.points = std::move(crossings);
    comps.push_back(std::move(c));
    return comps;
}

}  // namespace

SectionResult hyperplane_section(const ProductSurface& surf, const Vec4<Rat>& n, const Rat& d) {
    SectionResult out;
    BiForm p = surf.den;  // placeholder shape (2,2)
    {
        BiForm acc(2, 2);
        for (int i = 0; i < 4; ++i) {
            if (n[i] == 0) continue;
            BiForm t = surf.num[i];
            for (auto& c : t.c) c *= n[i];
            acc = acc + t;
        }
        BiForm dd = surf.den;
        for (auto& c : dd.c) c *= d;
        p = acc - dd;
    }
    if (p.is_zero())
        throw std::domain_error("hyperplane_section: surface contained in the hyperplane");

    BinForm g = content_right(p);
    bool separable = false;
    BinForm f;
    if (!g.is_zero() && g.degree() >= 0) {
        try {
            BiForm q = divide_right(p, g);
            if (q.db == 0) {
                f = q.left_slice(0).primitive();
                separable = true;
            }
        } catch (const std::invalid_argument&) {
            separable = false;
        }
    }

    if (separable && (f.degree() > 0 || g.degree() > 0)) {
        out.exact_split = true;
        out.left_factor = f;
        out.right_factor = g;
        if (f.degree() > 0) {
            QuadRoots fr = analyze_quadratic(f);
            for (const auto& r : fr.roots) {
                SectionComponent c;
                c.kind = SectionComponent::Kind::great_branch;
                c.root = r;
                c.multiplicity = (fr.double_root && fr.roots.size() == 1) ? 2 : 1;
                c.points = sample_fixed_left(surf, r[0], r[1]);
                out.components.push_back(std::move(c));
            }
        }
        if (g.degree() > 0) {
            QuadRoots gr = analyze_quadratic(g);
            if (gr.distinct_real == 0 && g.degree() == 2) {
                SectionComponent c;
                c.kind = SectionComponent::Kind::isolated_double_circle;
                c.multiplicity = 2;
                out.components.push_back(std::move(c));
            }
            for (const auto& r : gr.roots) {
                SectionComponent c;
                c.kind = SectionComponent::Kind::double_circle_branch;
                c.root = r;
                c.multiplicity = (gr.double_root && gr.roots.size() == 1) ? 2 : 1;
                c.points = sample_fixed_right(surf, r[0], r[1]);
                out.components.push_back(std::move(c));
            }
        }
        return out;
    }

    out.components = marching_squares(surf, n, d, 128);
    return out;
}

// ---- double curve ----

namespace {

struct Params {
    double a1, b1, a2, b2;
};

struct GaussNewton {
    const ProductSurface& surf;

    Vec4d residual(const Params& p) const {
        QuatD q1 = surf.eval_angles(p.a1, p.b1);
        QuatD q2 = surf.eval_angles(p.a2, p.b2);
        return {q1.w - q2.w, q1.x - q2.x, q1.y - q2.y, q1.z - q2.z};
    }

    static double norm(const Vec4d& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    }

    // residual and analytic Jacobian columns
    Vec4d jet(const Params& p, std::array<Vec4d, 4>& J) const {
        QuatD p1, da1, db1, p2, da2, db2;
        surf.eval_angles_jet(p.a1, p.b1, p1, da1, db1);
        surf.eval_angles_jet(p.a2, p.b2, p2, da2, db2);
        J[0] = {da1.w, da1.x, da1.y, da1.z};
        J[1] = {db1.w, db1.x, db1.y, db1.z};
        J[2] = {-da2.w, -da2.x, -da2.y, -da2.z};
        J[3] = {-db2.w, -db2.x, -db2.y, -db2.z};
        return {p1.w - p2.w, p1.x - p2.x, p1.y - p2.y, p1.z - p2.z};
    }

    // one damped Gauss-Newton step; returns false if the 4x4 solve failed
    bool step(Params& p, double lambda) const {
        std::array<Vec4d, 4> J;
        Vec4d r = jet(p, J);
        // normal equations (J^T J + lambda I) dx = -J^T r, with J stored by columns
        double A[4][5] = {};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                double acc = 0;
                for (int k = 0; k < 4; ++k) acc += J[i][k] * J[j][k];
                A[i][j] = acc + (i == j ? lambda : 0);
            }
            double acc = 0;
            for (int k = 0; k < 4; ++k) acc += J[i][k] * r[k];
            A[i][4] = -acc;
        }
        // gaussian elimination
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int i = c + 1; i < 4; ++i)
                if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
            if (std::abs(A[piv][c]) < 1e-14) return false;
            std::swap(A[c], A[piv]);
            for (int i = 0; i < 4; ++i) {
                if (i == c) continue;
                double f = A[i][c] / A[c][c];
                for (int j = c; j < 5; ++j) A[i][j] -= f * A[c][j];
            }
        }
        p.a1 += A[0][4] / A[0][0];
        p.b1 += A[1][4] / A[1][1];
        p.a2 += A[2][4] / A[2][2];
        p.b2 += A[3][4] / A[3][3];
        return true;
    }

    bool refine(Params& p, double tol, int iters = 60) const {
        double lambda = 1e-8;
        for (int it = 0; it < iters; ++it) {
            double before = norm(residual(p));
            if (before < tol) return true;
            Params trial = p;
            if (!step(trial, lambda)) lambda *= 10;
            else if (norm(residual(trial)) < before) {
                p = trial;
                lambda = std::max(lambda * 0.3, 1e-12);
            } else {
                lambda *= 10;
                if (lambda > 1e6) return false;
            }
        }
        return norm(residual(p)) < tol;
    }
};

double torus_dist(double a, double b) {
    constexpr double kTau = 6.283185307179586;
    double d = std::fmod(std::abs(a - b), kTau);
    return std::min(d, kTau - d);
}

double param_separation(const Params& p) {
    return std::max(torus_dist(p.a1, p.a2), torus_dist(p.b1, p.b2));
}

}  // namespace

namespace {

// Genuine tangential contact: the two fibers split off the probed coordinate
// approach each other superlinearly (the sheets touch); on an embedded patch
// their distance grows linearly in the separation. axis=1 probes the second
// (b) coordinate, axis=0 the first.
bool tangential_contact_axis(const ProductSurface& surf, double a, double b, int axis,
                             double s = 0.1) {
    constexpr double kTau = 6.283185307179586;
    QuatD p1 = axis == 1 ? surf.eval_angles(a, b + s) : surf.eval_angles(a + s, b);
    auto other = [&](double t) {
        return axis == 1 ? surf.eval_angles(t, b - s) : surf.eval_angles(a - s, t);
    };
    double best = 1e300, bestt = 0;
    const int n0 = 96;
    for (int i = 0; i < n0; ++i) {
        double t = kTau * i / n0;
        QuatD q = other(t) - p1;
        double d = std::sqrt(dot(q, q));
        if (d < best) {
            best = d;
            bestt = t;
        }
    }
    double lo = bestt - kTau / n0, hi = bestt + kTau / n0;
    for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        auto dist_at = [&](double t) {
            QuatD q = other(t) - p1;
            return std::sqrt(dot(q, q));
        };
        if (dist_at(m1) < dist_at(m2)) hi = m2;
        else lo = m1;
    }
    QuatD q = other((lo + hi) / 2) - p1;
    best = std::min(best, std::sqrt(dot(q, q)));
    return best < 0.02 * s;
}

// -1: no contact; 0/1: contact with the given fixed axis coordinate
int tangential_axis(const ProductSurface& surf, double a, double b) {
    if (tangential_contact_axis(surf, a, b, 1)) return 1;
    if (tangential_contact_axis(surf, a, b, 0)) return 0;
    return -1;
}

// gap between the two fibers split at the axis coordinate t -+ delta
double fiber_gap(const ProductSurface& surf, double a, double b, int axis, double t,
                 double delta) {
    constexpr double kTau = 6.283185307179586;
    QuatD p1 = axis == 1 ? surf.eval_angles(a, t + delta) : surf.eval_angles(t + delta, b);
    auto other = [&](double x) {
        return axis == 1 ? surf.eval_angles(x, t - delta) : surf.eval_angles(t - delta, x);
    };
    double best = 1e300, bestx = 0;
    for (int i = 0; i < 96; ++i) {
        double x = kTau * i / 96;
        QuatD q = other(x) - p1;
        double d = dot(q, q);
        if (d < best) {
            best = d;
            bestx = x;
        }
    }
    double lo = bestx - kTau / 96, hi = bestx + kTau / 96;
    for (int it = 0; it < 50; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        auto at = [&](double x) {
            QuatD q = other(x) - p1;
            return dot(q, q);
        };
        if (at(m1) < at(m2)) hi = m2;
        else lo = m1;
    }
    QuatD q = other((lo + hi) / 2) - p1;
    return std::sqrt(std::min(best, dot(q, q)));
}

// locate the exact contact coordinate near a collapsed collision seed by
// minimizing the split-fiber gap
double refine_contact(const ProductSurface& surf, double a, double b, int axis,
                      double seed) {
    const double delta = 0.05;
    double lo = seed - 0.35, hi = seed + 0.35;
    for (int it = 0; it < 80; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        double f1 = fiber_gap(surf, a, b, axis, m1, delta);
        double f2 = fiber_gap(surf, a, b, axis, m2, delta);
        if (f1 < f2) hi = m2;
        else lo = m1;
    }
    return (lo + hi) / 2;
}

// null direction of the 4x4 Jacobian via inverse iteration on J^T J + eps I
std::array<double, 4> null_direction(const std::array<Vec4d, 4>& J,
                                     const std::array<double, 4>& seed) {
    double A[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0;
            for (int k = 0; k < 4; ++k) acc += J[i][k] * J[j][k];
            A[i][j] = acc + (i == j ? 1e-12 : 0.0);
        }
    std::array<double, 4> v = seed;
    for (int iter = 0; iter < 8; ++iter) {
        // solve A x = v
        double M[4][5];
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) M[i][j] = A[i][j];
            M[i][4] = v[i];
        }
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int i = c + 1; i < 4; ++i)
                if (std::abs(M[i][c]) > std::abs(M[piv][c])) piv = i;
            if (std::abs(M[piv][c]) < 1e-300) return v;
            std::swap(M[c], M[piv]);
            for (int i = 0; i < 4; ++i) {
                if (i == c) continue;
                double f = M[i][c] / M[c][c];
                for (int j = c; j < 5; ++j) M[i][j] -= f * M[c][j];
            }
        }
        std::array<double, 4> x{M[0][4] / M[0][0], M[1][4] / M[1][1], M[2][4] / M[2][2],
                                M[3][4] / M[3][3]};
        double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        if (n < 1e-300) return v;
        for (int i = 0; i < 4; ++i) v[i] = x[i] / n;
    }
    return v;
}

}  // namespace

std::vector<DoubleCurveComponent> double_curve(const ProductSurface& surf,
                                               const ProjectionSpec& proj,
                                               const DoubleCurveOptions& opts) {
    constexpr double kTau = 6.283185307179586;
    const int n = opts.search_grid;

    struct Sample {
        double a, b;
        Vec4d p;
    };
    std::vector<Sample> samples;
    samples.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double a = kTau * i / n, b = kTau * j / n;
            QuatD q = surf.eval_angles(a, b);
            samples.push_back({a, b, {q.w, q.x, q.y, q.z}});
        }

    // Candidate detection needs buckets at grid scale (two sheets sampled at
    // resolution h only come within O(h) of each other); the fine 1e-4 cells
    // are used later to deduplicate refined collision points.
    const double grid_step = kTau / n;
    const double cell = std::max(opts.bucket, 2.0 * grid_step);
    auto key_of = [cell](const Vec4d& p) {
        auto q = [cell](double x) { return static_cast<long long>(std::floor(x / cell)); };
        return std::array<long long, 4>{q(p[0]), q(p[1]), q(p[2]), q(p[3])};
    };
    std::map<std::array<long long, 4>, std::vector<int>> buckets;
    for (int i = 0; i < static_cast<int>(samples.size()); ++i)
        buckets[key_of(samples[i].p)].push_back(i);

    const double param_guard = 4.0 * grid_step;
    const double candidate_dist = 2.0 * cell;

    GaussNewton gn{surf};
    std::vector<Params> found;
    // parameter cells already explained by a successful refinement; skipping
    // their candidate pairs avoids re-refining the same curve piece
    std::set<long long> claimed;
    auto cell_id = [n](double a, double b) {
        auto wrap = [n](double x) {
            double t = std::fmod(x, kTau);
            if (t < 0) t += kTau;
            int i = static_cast<int>(t / kTau * n) % n;
            return i;
        };
        return static_cast<long long>(wrap(a)) * n + wrap(b);
    };
    auto consider = [&](const Sample& s1, const Sample& s2) {
        if (torus_dist(s1.a, s2.a) < param_guard && torus_dist(s1.b, s2.b) < param_guard)
            return;
        double d2 = 0;
        for (int k = 0; k < 4; ++k) d2 += (s1.p[k] - s2.p[k]) * (s1.p[k] - s2.p[k]);
        if (d2 > candidate_dist * candidate_dist) return;
        if (claimed.count(cell_id(s1.a, s1.b)) && claimed.count(cell_id(s2.a, s2.b))) return;
        Params p{s1.a, s1.b, s2.a, s2.b};
        if (!gn.refine(p, std::min(opts.residual_tol, 1e-11))) return;
        if (GaussNewton::norm(gn.residual(p)) >= opts.residual_tol) return;
        claimed.insert(cell_id(s1.a, s1.b));
        claimed.insert(cell_id(s2.a, s2.b));
        found.push_back(p);
    };
    for (const auto& [key, idxs] : buckets) {
        for (long long d0 = -1; d0 <= 1; ++d0)
            for (long long d1 = -1; d1 <= 1; ++d1)
                for (long long d2 = -1; d2 <= 1; ++d2)
                    for (long long d3 = -1; d3 <= 1; ++d3) {
                        std::array<long long, 4> nk = {key[0] + d0, key[1] + d1, key[2] + d2,
                                                       key[3] + d3};
                        if (nk < key) continue;
                        auto it = buckets.find(nk);
                        if (it == buckets.end()) continue;
                        for (int i : idxs)
                            for (int j : it->second) {
                                if (nk == key && j <= i) continue;
                                consider(samples[i], samples[j]);
                            }
                    }
    }
    if (found.empty()) return {};

    // split transversal pairs from parameter-collapsed ones; the latter are
    // only kept when the tangency probe confirms a genuine contact
    struct Anchor {
        Params p;
        bool tangential;
        int axis = -1;  // fixed-coordinate axis of a tangential contact
    };
    std::vector<Anchor> anchors;
    std::map<std::array<long long, 4>, int> probed;  // tangential axis per coarse cell
    for (const auto& p : found) {
        bool merged = param_separation(p) < opts.min_param_sep;
        int axis = -1;
        if (merged) {
            auto key = key_of({p.a1, p.b1, 0, 0});
            auto it = probed.find(key);
            if (it != probed.end()) axis = it->second;
            else {
                axis = tangential_axis(surf, p.a1, p.b1);
                probed[key] = axis;
            }
            if (axis < 0) continue;
        }
        anchors.push_back({p, merged, axis});
    }
    if (anchors.empty()) return {};

    StereographicD sp = proj.kind == ProjectionSpec::Kind::stereo ? proj.stereo_float()
                                                                  : StereographicD();
    auto project = [&](double a, double b) -> Vec3d {
        QuatD q = surf.eval_angles(a, b);
        if (proj.kind == ProjectionSpec::Kind::stereo) return sp(q);
        return {q.x / q.w, q.y / q.w, q.z / q.w};
    };

    std::vector<bool> consumed(anchors.size(), false);
    std::vector<DoubleCurveComponent> out;

    auto consume_near = [&](const PolylineCurve& curve) {
        for (size_t i = 0; i < anchors.size(); ++i) {
            if (consumed[i]) continue;
            Vec3d img = project(anchors[i].p.a1, anchors[i].p.b1);
            if (distance_to_curve(img, curve) < 1e-3) consumed[i] = true;
        }
    };

    for (size_t start = 0; start < anchors.size(); ++start) {
        if (consumed[start]) continue;
        const Anchor& seed = anchors[start];
        DoubleCurveComponent comp;
        comp.tangential = seed.tangential;

        if (seed.tangential) {
            // the contact curve is the fiber sweep with the probed coordinate
            // held at the contact value
            for (int k = 0; k < opts.target_points; ++k) {
                double t = kTau * k / opts.target_points;
                comp.image.pts.push_back(seed.axis == 1 ? project(t, seed.p.b1)
                                                        : project(seed.p.a1, t));
            }
        } else {
            // predictor-corrector continuation along the collision manifold
            const double h = kTau / opts.target_points;
            Params cur = seed.p;
            std::array<double, 4> dir{1, 0, 0, 0};
            {
                std::array<Vec4d, 4> J;
                gn.jet(cur, J);
                dir = null_direction(J, {0.7, 0.1, 0.7, 0.1});
            }
            const int max_steps = 8 * opts.target_points;
            std::vector<Params> trace = {cur};
            for (int step = 0; step < max_steps; ++step) {
                std::array<Vec4d, 4> J;
                gn.jet(cur, J);
                std::array<double, 4> v = null_direction(J, dir);
                double dp = v[0] * dir[0] + v[1] * dir[1] + v[2] * dir[2] + v[3] * dir[3];
                if (dp < 0)
                    for (auto& x : v) x = -x;
                Params nxt{cur.a1 + h * v[0], cur.b1 + h * v[1], cur.a2 + h * v[2],
                           cur.b2 + h * v[3]};
                if (!gn.refine(nxt, std::min(opts.residual_tol, 1e-11))) break;
                dir = v;
                cur = nxt;
                trace.push_back(cur);
                if (step > 16) {
                    double da = torus_dist(cur.a1, seed.p.a1) + torus_dist(cur.b1, seed.p.b1) +
                                torus_dist(cur.a2, seed.p.a2) + torus_dist(cur.b2, seed.p.b2);
                    if (da < 2 * h) break;  // loop closed
                }
            }
            for (const auto& p : trace) comp.image.pts.push_back(project(p.a1, p.b1));
        }
        comp.image.closed = true;
        if (comp.image.pts.size() < 8) continue;
        consume_near(comp.image);
        consumed[start] = true;

        // drop duplicate loops that trace the same image curve
        bool duplicate = false;
        for (const auto& prev : out)
            if (hausdorff(prev.image, comp.image) < 1e-4) {
                duplicate = true;
                break;
            }
        if (!duplicate) out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace starsurf
