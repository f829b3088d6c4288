#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "starsurf/surface.hpp"
#include "starsurf/topology.hpp"

using namespace starsurf;

namespace {

ProductSurface surf_of(CirclePreset right) {
    return ProductSurface::build(named_circle(CirclePreset::A0), named_circle(right),
                                 Side::left_times_right);
}

// great circle through 1 and j
RationalCircleParam great_1j() {
    RationalCircleParam p;
    p.num[0] = BinForm::quadratic(rat(-1), rat(0), rat(1));
    p.num[1] = BinForm::quadratic(rat(0), rat(0), rat(0));
    p.num[2] = BinForm::quadratic(rat(0), rat(2), rat(0));
    p.num[3] = BinForm::quadratic(rat(0), rat(0), rat(0));
    p.den = BinForm::quadratic(rat(1), rat(0), rat(1));
    return p;
}

}  // namespace

TEST_CASE("products evaluate as Hamilton products of the factors") {
    ProductSurface s2 = surf_of(CirclePreset::B2);
    // (alpha, beta) = (0, pi): 1 * 1 = 1
    CHECK(s2.eval(rat(0), rat(1), rat(1), rat(0)) == QuatR::one());

    // alpha = pi/2 fixes the left factor at i
    ProductSurface s1 = surf_of(CirclePreset::B1);
    for (long k = -3; k <= 3; ++k) {
        QuatR expect = hamilton(QuatR::i(), named_circle(CirclePreset::B1).eval(rat(k), rat(1)));
        CHECK(s1.eval(rat(1), rat(1), rat(k), rat(1)) == expect);
    }
}

TEST_CASE("on-sphere identity for all three normal-form products") {
    for (auto p : {CirclePreset::B1, CirclePreset::B2, CirclePreset::B3})
        CHECK(surf_of(p).on_sphere_certificate());
}

TEST_CASE("degenerate product is rejected") {
    RationalCircleParam a0 = named_circle(CirclePreset::A0);
    CHECK_THROWS_AS(ProductSurface::build(a0, a0, Side::left_times_right), std::domain_error);
}

TEST_CASE("left/right swap traces the same point set") {
    RationalCircleParam a0 = named_circle(CirclePreset::A0);
    RationalCircleParam b1 = named_circle(CirclePreset::B1);
    ProductSurface lr = ProductSurface::build(a0, b1, Side::left_times_right);
    ProductSurface rl = ProductSurface::build(b1, a0, Side::right_times_left);

    auto grid_points = [](const ProductSurface& s) {
        std::vector<std::array<Rat, 4>> pts;
        std::vector<std::pair<long, long>> params;
        for (long i = -7; i <= 7; ++i) params.push_back({i, 1});
        params.push_back({1, 0});
        for (auto [u, su] : params)
            for (auto [v, sv] : params) {
                QuatR q = s.eval(rat(u), rat(su), rat(v), rat(sv));
                pts.push_back({q.w, q.x, q.y, q.z});
            }
        std::sort(pts.begin(), pts.end());
        return pts;
    };
    CHECK(grid_points(lr) == grid_points(rl));
}

TEST_CASE("fibers are exact circles") {
    ProductSurface s = surf_of(CirclePreset::B1);
    // small fibers: Clifford translates of B1 (exact plane fit succeeds)
    RationalCircleParam f = s.small_fiber(rat(2), rat(3));
    CHECK(f.on_sphere_certificate());
    CircleR fc = plane_form(f);
    CHECK_FALSE(fc.is_great());

    // great fibers through b(v) are great circles
    RationalCircleParam g = s.great_fiber(rat(1), rat(2));
    CHECK(g.on_sphere_certificate());
    CHECK(plane_form(g).is_great());
}

TEST_CASE("great fibers avoid the double circle unless they equal it") {
    // the double circle of A0*B1 is pi-imaged to the unit circle z=0; great
    // fibers at parameters away from the two roots keep a positive distance
    ProductSurface s = surf_of(CirclePreset::B1);
    StereographicD sp;
    SplitMix64 rng(13);
    constexpr double kTau = 6.283185307179586;
    double beta1 = std::acos(-0.75);
    for (int it = 0; it < 12; ++it) {
        double beta = rng.uniform01() * kTau;
        if (std::abs(beta - beta1) < 0.2 || std::abs(beta - (kTau - beta1)) < 0.2) continue;
        double mind = 1e300;
        for (int k = 0; k < 256; ++k) {
            QuatD q = s.eval_angles(kTau * k / 256, beta);
            Vec3d img = sp(q);
            double d = std::hypot(std::hypot(img[0], img[1]) - 1.0, img[2]);
            mind = std::min(mind, d);
        }
        CHECK(mind > 1e-3);
    }
}

TEST_CASE("sample_grid: torus connectivity and validation") {
    ProductSurface s = surf_of(CirclePreset::B3);
    ProjectionSpec proj;
    Mesh m = sample_grid(s, 16, 16, proj);
    CHECK(m.vertices.size() == 256);
    CHECK(m.faces.size() == 256);
    CHECK(euler_characteristic(m) == 0);
    CHECK(m.uv.size() == m.vertices.size());

    CHECK_THROWS_AS(sample_grid(s, 4, 16, proj), std::invalid_argument);
}

TEST_CASE("sample_grid rejects a projection center on the surface") {
    // A0 * (great circle through 1 and j) passes through k = i*j, the
    // default stereographic center
    ProductSurface cliff =
        ProductSurface::build(named_circle(CirclePreset::A0), great_1j(),
                              Side::left_times_right);
    ProjectionSpec proj;
    CHECK_THROWS_AS(sample_grid(cliff, 16, 16, proj), std::domain_error);
}

TEST_CASE("mesh of the B3 surface stays away from the unit circle") {
    ProductSurface s = surf_of(CirclePreset::B3);
    Mesh m = sample_grid(s, 32, 32, ProjectionSpec{});
    double mind = 1e300;
    for (const auto& v : m.vertices)
        mind = std::min(mind, std::hypot(std::hypot(v[0], v[1]) - 1.0, v[2]));
    CHECK(mind > 0.45);
}

TEST_CASE("Clifford torus mesh is a ring torus point set") {
    // A0 * (1-j circle) is a Clifford torus; projected from a center on one
    // of its spine great circles the image is the ring torus with R^2 = 2,
    // r = 1, axis through the origin. The axis direction comes from the
    // image of a spine point.
    ProductSurface cliff =
        ProductSurface::build(named_circle(CirclePreset::A0), great_1j(),
                              Side::left_times_right);
    double r2 = std::sqrt(0.5);
    StereographicD sp(UnitQuatD(QuatD{0.0, r2, r2, 0.0}));

    Vec3d ax = sp(QuatD{r2, 0.0, 0.0, -r2});
    double n = std::sqrt(dot3(ax, ax));
    for (auto& c : ax) c /= n;

    constexpr double kTau = 6.283185307179586;
    double worst = 0;
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            QuatD q = cliff.eval_angles(kTau * i / 40, kTau * j / 40);
            Vec3d x = sp(q);
            double n2 = dot3(x, x);
            double axial = dot3(x, ax);
            double lhs = (n2 + 1) * (n2 + 1);
            double rhs = 8 * (n2 - axial * axial);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("hyperplane sections of the normal forms split exactly") {
    Vec4<Rat> n{rat(0), rat(0), rat(0), rat(1)};
    const int expected_roots[3] = {2, 1, 0};
    const CirclePreset presets[3] = {CirclePreset::B1, CirclePreset::B2, CirclePreset::B3};
    for (int i = 0; i < 3; ++i) {
        ProductSurface s = surf_of(presets[i]);
        SectionResult sec = hyperplane_section(s, n, rat(0));
        REQUIRE(sec.exact_split);
        CHECK(sec.right_factor == named_circle(presets[i]).num[3].primitive());
        QuadRoots gr = analyze_quadratic(sec.right_factor);
        CHECK(gr.distinct_real == expected_roots[i]);

        // the cos-branches are the fibers through +-i and are antipodal
        int great_branches = 0;
        for (const auto& comp : sec.components)
            if (comp.kind == SectionComponent::Kind::great_branch) ++great_branches;
        CHECK(great_branches == 2);
        for (long k = -3; k <= 3; ++k) {
            QuatR plus = s.eval(rat(1), rat(1), rat(k), rat(1));
            QuatR minus = s.eval(rat(-1), rat(1), rat(k), rat(1));
            CHECK(plus == -minus);
        }
    }

    // tangential section carries the double root and a single branch
    SectionResult s2 = hyperplane_section(surf_of(CirclePreset::B2), n, rat(0));
    QuadRoots g2 = analyze_quadratic(s2.right_factor);
    CHECK(g2.double_root);

    // B3: no real roots, the isolated double circle is reported
    SectionResult s3 = hyperplane_section(surf_of(CirclePreset::B3), n, rat(0));
    bool isolated = false;
    for (const auto& comp : s3.components)
        isolated = isolated || comp.kind == SectionComponent::Kind::isolated_double_circle;
    CHECK(isolated);
}

TEST_CASE("generic hyperplane sections fall back to traced branches") {
    ProductSurface s = surf_of(CirclePreset::B1);
    Vec4<Rat> n{rat(1), rat(0), rat(0), rat(0)};
    SectionResult sec = hyperplane_section(s, n, rat(1, 2));
    CHECK_FALSE(sec.exact_split);
    REQUIRE_FALSE(sec.components.empty());
    // traced points satisfy the hyperplane equation approximately
    for (const auto& comp : sec.components)
        for (const auto& p : comp.points) CHECK(std::abs(p[0] - 0.5) < 1e-6);
}

TEST_CASE("double curves of the three normal forms") {
    ProjectionSpec stereo;
    DoubleCurveOptions opts;
    opts.search_grid = 192;
    opts.target_points = 512;

    auto curves1 = double_curve(surf_of(CirclePreset::B1), stereo, opts);
    REQUIRE(curves1.size() == 1);
    CHECK_FALSE(curves1[0].tangential);
    double worst = 0;
    for (const auto& p : curves1[0].image.pts)
        worst = std::max(worst, std::hypot(std::hypot(p[0], p[1]) - 1.0, p[2]));
    CHECK(worst < 1e-4);

    auto curves2 = double_curve(surf_of(CirclePreset::B2), stereo, opts);
    REQUIRE(curves2.size() >= 1);
    CHECK(curves2[0].tangential);
    worst = 0;
    for (const auto& p : curves2[0].image.pts)
        worst = std::max(worst, std::hypot(std::hypot(p[0], p[1]) - 1.0, p[2]));
    CHECK(worst < 1e-4);

    auto curves3 = double_curve(surf_of(CirclePreset::B3), stereo, opts);
    CHECK(curves3.empty());
}

TEST_CASE("mesh export formats") {
    ProductSurface s = surf_of(CirclePreset::B2);
    Mesh m = sample_grid(s, 8, 8, ProjectionSpec{});
    std::ostringstream obj, ply;
    write_obj(m, obj);
    write_ply(m, ply);
    std::string o = obj.str(), p = ply.str();
    CHECK(o.find("v ") != std::string::npos);
    CHECK(o.find("f ") != std::string::npos);
    CHECK(p.rfind("ply\n", 0) == 0);
    CHECK(p.find("element vertex 64") != std::string::npos);
    CHECK(p.find("element face 64") != std::string::npos);
}
