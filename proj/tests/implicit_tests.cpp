#include <cmath>

#include "doctest.h"
#include "starsurf/implicit.hpp"

using namespace starsurf;

namespace {

// rational points of the unit 2-sphere via two half-angle parameters
RationalSamples sphere_samples(int count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    RationalSamples out;
    out.homogeneous = false;
    while (static_cast<int>(out.pts.size()) < count) {
        Rat a = rng.small_rat(20), b = rng.small_rat(20);
        Rat n = a * a + b * b + 1;
        out.pts.push_back({2 * a / n, 2 * b / n, (a * a + b * b - 1) / n, Rat(0)});
    }
    return out;
}

ProductSurface clifford_surface() {
    // A0 * (great circle through 1 and (3i+4k)/5): a Clifford torus whose
    // stereographic image from the default center is an honest quartic
    RationalCircleParam c;
    c.num[0] = BinForm::quadratic(rat(-5), rat(0), rat(5));
    c.num[1] = BinForm::quadratic(rat(0), rat(6), rat(0));
    c.num[2] = BinForm::quadratic(rat(0), rat(0), rat(0));
    c.num[3] = BinForm::quadratic(rat(0), rat(8), rat(0));
    c.den = BinForm::quadratic(rat(5), rat(0), rat(5));
    return ProductSurface::build(named_circle(CirclePreset::A0), c, Side::left_times_right);
}

}  // namespace

TEST_CASE("monomial bases") {
    MonomialBasis a8 = MonomialBasis::affine3(8);
    CHECK(a8.size() == 165);
    CHECK(a8.prefix_size(7) == 120);
    CHECK(a8.prefix_size(2) == 10);
    MonomialBasis h4 = MonomialBasis::homogeneous4(4);
    CHECK(h4.size() == 35);
    // grlex: first monomial is the pure power of the first variable
    CHECK(h4.monos.front() == std::array<int, 4>{4, 0, 0, 0});
    CHECK(a8.monos.front() == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("vanishing kernel recovers the unit sphere") {
    MonomialBasis basis = MonomialBasis::affine3(2);
    RationalSamples pts = sphere_samples(basis.size() + 40, 77);
    auto kers = vanishing_kernel(pts, basis);
    REQUIRE(kers.size() == 1);
    const ImplicitPoly& p = kers[0];
    // 1 - x^2 - y^2 - z^2 with the leading coefficient normalized positive
    // grlex order: [1, x, y, z, x^2, xy, xz, y^2, yz, z^2]
    std::vector<long> expect = {1, 0, 0, 0, -1, 0, 0, -1, 0, -1};
    REQUIRE(p.coeffs.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(p.coeffs[i] == expect[i]);
}

TEST_CASE("vanishing kernel requires enough samples") {
    MonomialBasis basis = MonomialBasis::affine3(2);
    RationalSamples pts = sphere_samples(basis.size() + 10, 78);
    CHECK_THROWS_AS(vanishing_kernel(pts, basis), std::invalid_argument);
}

TEST_CASE("rational samples are deterministic, distinct and on-surface") {
    ProductSurface s = clifford_surface();
    ProjectionSpec stereo;
    RationalSamples s1 = rational_samples(s, stereo, 60, 12345);
    RationalSamples s2 = rational_samples(s, stereo, 60, 12345);
    RationalSamples s3 = rational_samples(s, stereo, 60, 54321);
    CHECK(s1.pts == s2.pts);
    CHECK_FALSE(s1.pts == s3.pts);
    for (size_t i = 0; i < s1.pts.size(); ++i)
        for (size_t j = i + 1; j < s1.pts.size(); ++j) CHECK_FALSE(s1.pts[i] == s1.pts[j]);
}

TEST_CASE("central-projection samples are integral with nonzero first coordinate") {
    ProductSurface s = ProductSurface::build(named_circle(CirclePreset::A0),
                                             named_circle(CirclePreset::B1),
                                             Side::left_times_right);
    ProjectionSpec central;
    central.kind = ProjectionSpec::Kind::central;
    RationalSamples pts = rational_samples(s, central, 40, 999);
    CHECK(pts.homogeneous);
    for (const auto& p : pts.pts) {
        for (int i = 0; i < 4; ++i) CHECK(p[i].get_den() == 1);
        CHECK_FALSE(p[0] == 0);  // x1 > 0 on the B-side numerators
    }
}

TEST_CASE("Clifford torus certifies at degree 4, independent of the seed") {
    ProductSurface s = clifford_surface();
    ProjectionSpec stereo;
    DegreeCertificate c1 = certify_degree(s, stereo, 5, 1001);
    DegreeCertificate c2 = certify_degree(s, stereo, 5, 424242);
    CHECK(c1.degree == 4);
    CHECK(c1.kernel_dim == 1);
    for (int d : c1.dims_below) CHECK(d == 0);
    CHECK(c2.degree == 4);
    // primitive sign-normalized coefficients are seed-independent
    CHECK(c1.poly.coeffs == c2.poly.coeffs);
}

TEST_CASE("certify_degree throws when the degree budget is too small") {
    ProductSurface s = ProductSurface::build(named_circle(CirclePreset::A0),
                                             named_circle(CirclePreset::B1),
                                             Side::left_times_right);
    ProjectionSpec stereo;
    CHECK_THROWS_AS(certify_degree(s, stereo, 5, kDefaultSeed), std::domain_error);
}

TEST_CASE("gradient test distinguishes singular and smooth points") {
    ProductSurface s = ProductSurface::build(named_circle(CirclePreset::A0),
                                             named_circle(CirclePreset::B2),
                                             Side::left_times_right);
    ProjectionSpec central;
    central.kind = ProjectionSpec::Kind::central;
    DegreeCertificate cert = certify_degree(s, central, 4, kDefaultSeed);
    REQUIRE(cert.degree == 4);

    // the line x3 = x4 = 0 is the double line: all partials vanish there
    std::vector<std::array<Rat, 4>> line;
    for (long k = 1; k <= 20; ++k) line.push_back({rat(1), rat(k, 9), rat(0), rat(0)});
    CHECK(gradient_vanishes_on(cert.poly, line));

    // a generic surface point is smooth: the polynomial vanishes but the
    // gradient does not
    QuatR q = s.eval(rat(1), rat(2), rat(2), rat(3));
    std::array<Rat, 4> pt{q.w, q.x, q.y, q.z};
    CHECK(cert.poly.eval(pt) == 0);
    CHECK_FALSE(gradient_vanishes_on(cert.poly, {pt}));

    // off-surface points are a distinct error
    std::array<Rat, 4> off{rat(1), rat(1), rat(1), rat(1)};
    CHECK_THROWS_AS(gradient_vanishes_on(cert.poly, {off}), std::domain_error);
}

TEST_CASE("certified polynomial nearly vanishes on float samples") {
    ProductSurface s = clifford_surface();
    ProjectionSpec stereo;
    DegreeCertificate cert = certify_degree(s, stereo, 4, kDefaultSeed);
    double scale = 0;
    for (const auto& c : cert.poly.coeffs) scale = std::max(scale, std::abs(c.get_d()));
    SplitMix64 rng(7);
    StereographicD sp;
    constexpr double kTau = 6.283185307179586;
    double worst = 0;
    for (int it = 0; it < 1000; ++it) {
        QuatD q = s.eval_angles(rng.uniform01() * kTau, rng.uniform01() * kTau);
        Vec3d x = sp(q);
        worst = std::max(worst, std::abs(cert.poly.evalf({x[0], x[1], x[2], 0.0})));
    }
    CHECK(worst / scale < 1e-8);
}

TEST_CASE("implicit polynomial exact evaluation") {
    MonomialBasis basis = MonomialBasis::affine3(2);
    RationalSamples pts = sphere_samples(basis.size() + 40, 5);
    ImplicitPoly p = vanishing_kernel(pts, basis)[0];
    CHECK(p.eval({rat(3, 5), rat(4, 5), rat(0), rat(0)}) == 0);
    CHECK(p.eval({rat(1), rat(1), rat(0), rat(0)}) != 0);
    auto g = p.gradient({rat(3, 5), rat(4, 5), rat(0), rat(0)});
    CHECK(g[0] == rat(-6, 5));
    CHECK(g[1] == rat(-8, 5));
    CHECK(g[2] == 0);
}
