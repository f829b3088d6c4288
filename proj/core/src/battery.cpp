#include "starsurf/battery.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "starsurf/classify.hpp"
#include "starsurf/implicit.hpp"
#include "starsurf/lattice.hpp"
#include "starsurf/moebius.hpp"
#include "starsurf/surface.hpp"
#include "starsurf/topology.hpp"

namespace starsurf {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

struct Ctx {
    std::uint64_t seed;
    RationalCircleParam a0 = named_circle(CirclePreset::A0);
    std::array<RationalCircleParam, 3> b = {named_circle(CirclePreset::B1),
                                            named_circle(CirclePreset::B2),
                                            named_circle(CirclePreset::B3)};
    ProductSurface surf(int i) const {
        return ProductSurface::build(a0, b[i], Side::left_times_right);
    }
};

PolylineCurve unit_circle_z0(int n = 512) {
    PolylineCurve c;
    c.closed = true;
    for (int i = 0; i < n; ++i) {
        double t = kTau * i / n;
        c.pts.push_back({std::cos(t), std::sin(t), 0.0});
    }
    return c;
}

// great circle through 1 and (3i+4k)/5; its product with A0 is a Clifford
// torus avoiding the default projection center
RationalCircleParam clifford_partner() {
    RationalCircleParam p;
    p.num[0] = BinForm::quadratic(rat(-5), rat(0), rat(5));
    p.num[1] = BinForm::quadratic(rat(0), rat(6), rat(0));
    p.num[2] = BinForm::quadratic(rat(0), rat(0), rat(0));
    p.num[3] = BinForm::quadratic(rat(0), rat(8), rat(0));
    p.den = BinForm::quadratic(rat(5), rat(0), rat(5));
    return p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// ---- criterion 1: exact on-sphere identities ----
CheckResult criterion1(const Ctx& ctx) {
    CheckResult r{"1", "exact on-sphere identities (circles and products)", false, false, "", 0};
    bool ok = ctx.a0.on_sphere_certificate();
    for (const auto& bi : ctx.b) ok = ok && bi.on_sphere_certificate();
    for (int i = 0; i < 3; ++i) ok = ok && ctx.surf(i).on_sphere_certificate();
    r.pass = ok;
    r.detail = ok ? "A0, B1, B2, B3 and all three products satisfy sum(x_i^2) = den^2"
                  : "an identity failed";
    return r;
}

// ---- criterion 2: intersection multiplicities and classification ----
CheckResult criterion2(const Ctx& ctx) {
    CheckResult r{"2", "intersection multiplicities q and type classification", false, false,
                  "", 0};
    CircleR a0_plane = plane_form(ctx.a0);
    const int expect_q[3] = {2, 1, 0};
    const bool expect_tan[3] = {false, true, false};
    const GreatType expect_type[3] = {GreatType::I, GreatType::II, GreatType::III};
    bool ok = true;
    std::ostringstream detail;
    for (int i = 0; i < 3; ++i) {
        MeetResult m = meet_great_circle(ctx.b[i], a0_plane);
        ClassifyResult c = classify(ctx.a0, ctx.b[i]);
        bool this_ok = m.q == expect_q[i] && m.tangent == expect_tan[i] &&
                       c.type == expect_type[i];
        ok = ok && this_ok;
        detail << "B" << (i + 1) << ": q=" << m.q << (m.tangent ? " tangent" : "")
               << " -> type " << great_type_name(c.type) << "; ";
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// ---- criterion 3: degree certification ----
CheckResult criterion3(const Ctx& ctx, std::vector<DegreeCertificate>& octics,
                       std::vector<DegreeCertificate>& quartics) {
    CheckResult r{"3", "degree certification (octics, tau-quartics, Clifford torus)", false,
                  false, "", 0};
    ProjectionSpec stereo;  // default
    ProjectionSpec central;
    central.kind = ProjectionSpec::Kind::central;

    bool ok = true;
    std::ostringstream detail;
    for (int i = 0; i < 3; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        DegreeCertificate cert = certify_degree(ctx.surf(i), stereo, 8, ctx.seed);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool this_ok = cert.degree == 8 && cert.kernel_dim == 1 &&
                       static_cast<int>(cert.dims_below.size()) == 7;
        for (int d : cert.dims_below) this_ok = this_ok && d == 0;
        this_ok = this_ok && secs < 300.0;
        ok = ok && this_ok;
        detail << "pi(A0*B" << (i + 1) << "): d=" << cert.degree << " dim=" << cert.kernel_dim
               << " (deg7 dim 0) in " << fmt(secs) << "s; ";
        octics.push_back(std::move(cert));
    }
    for (int i = 0; i < 3; ++i) {
        DegreeCertificate cert = certify_degree(ctx.surf(i), central, 5, ctx.seed);
        bool this_ok = cert.degree == 4 && cert.kernel_dim == 1;
        ok = ok && this_ok;
        detail << "tau(A0*B" << (i + 1) << "): d=" << cert.degree << " dim=" << cert.kernel_dim
               << "; ";
        quartics.push_back(std::move(cert));
    }
    {
        ProductSurface cliff =
            ProductSurface::build(ctx.a0, clifford_partner(), Side::left_times_right);
        DegreeCertificate cert = certify_degree(cliff, stereo, 5, ctx.seed);
        bool this_ok = cert.degree == 4 && cert.kernel_dim == 1;
        ok = ok && this_ok;
        detail << "Clifford torus: d=" << cert.degree << " dim=" << cert.kernel_dim;
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// ---- criterion 4: singular-locus gradient certificates ----
CheckResult criterion4(const std::vector<DegreeCertificate>& octics,
                       const std::vector<DegreeCertificate>& quartics) {
    CheckResult r{"4", "gradients vanish on the double circle / double line", false, false, "",
                  0};
    // 20 rational points of the unit circle z=0
    std::vector<std::array<Rat, 4>> circle_pts;
    for (long k = 1; k <= 20; ++k) {
        Rat t = rat(k, 23);
        Rat d = 1 + t * t;
        circle_pts.push_back({(1 - t * t) / d, 2 * t / d, Rat(0), Rat(0)});
    }
    // 20 rational points of the line x3 = x4 = 0 in P^3
    std::vector<std::array<Rat, 4>> line_pts;
    for (long k = 0; k < 19; ++k) line_pts.push_back({Rat(1), rat(k - 9, 7), Rat(0), Rat(0)});
    line_pts.push_back({Rat(0), Rat(1), Rat(0), Rat(0)});

    bool ok = true;
    for (const auto& cert : octics) ok = ok && gradient_vanishes_on(cert.poly, circle_pts);
    for (const auto& cert : quartics) ok = ok && gradient_vanishes_on(cert.poly, line_pts);
    r.pass = ok;
    r.detail = ok ? "all partials vanish exactly at 20 points per surface"
                  : "a gradient was nonzero on the singular locus";
    return r;
}

// ---- criterion 5: hyperplane-section decomposition ----
CheckResult criterion5(const Ctx& ctx) {
    CheckResult r{"5", "x4=0 section splits into cos-branches and the double-circle factor",
                  false, false, "", 0};
    Vec4<Rat> n{Rat(0), Rat(0), Rat(0), Rat(1)};
    bool ok = true;
    std::ostringstream detail;
    const int expect_roots[3] = {2, 1, 0};
    for (int i = 0; i < 3; ++i) {
        ProductSurface s = ctx.surf(i);
        SectionResult sec = hyperplane_section(s, n, Rat(0));
        bool this_ok = sec.exact_split;
        // right factor equals the x4 numerator of the small circle
        this_ok = this_ok && sec.right_factor == ctx.b[i].num[3].primitive();
        // left factor has the two cos = 0 roots (u = +-s)
        QuadRoots fr = analyze_quadratic(sec.left_factor);
        this_ok = this_ok && fr.distinct_real == 2;
        // the two great branches are antipodal pointwise: sigma(i-branch) =
        // -sigma(-i-branch), exact at rational parameters
        for (long pv = -2; pv <= 2; ++pv) {
            QuatR plus = s.eval(rat(1), rat(1), rat(pv), rat(1));
            QuatR minus = s.eval(rat(-1), rat(1), rat(pv), rat(1));
            this_ok = this_ok && plus == -minus;
        }
        // the double-circle factor: real roots match q, multiplicity 2 is the
        // tangential case, no real roots leaves the isolated double circle
        QuadRoots gr = analyze_quadratic(sec.right_factor);
        this_ok = this_ok && gr.distinct_real == expect_roots[i];
        if (i == 1) this_ok = this_ok && gr.double_root;
        if (i == 2) {
            bool has_isolated = false;
            for (const auto& c : sec.components)
                has_isolated = has_isolated ||
                               c.kind == SectionComponent::Kind::isolated_double_circle;
            this_ok = this_ok && has_isolated;
        }
        ok = ok && this_ok;
        detail << "B" << (i + 1) << ": split=" << (sec.exact_split ? "yes" : "no")
               << " roots=" << gr.distinct_real << "; ";
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// ---- criterion 6: lattice bookkeeping ----
CheckResult criterion6() {
    CheckResult r{"6", "divisor-lattice delta and genus bookkeeping", false, false, "", 0};
    DivisorClass l0{1, 0}, l1{0, 1};
    DivisorClass h = 2 * l0 + 2 * l1;
    DivisorClass k = -h;
    bool ok = intersect(l0, l1) == 1;
    ok = ok && self_intersection(h) == 8;
    ok = ok && delta_S3(8, intersect(h, k)) == 8;
    ok = ok && delta_P3(4, -6) == 3;
    ok = ok && arithmetic_genus(h, k) == 1;
    ok = ok && arithmetic_genus(l0, k) == 0;
    ok = ok && (1 + 1 + 2 + 2 + 2 == 8);
    ok = ok && (1 + 1 + 1 == 3);
    // the projected-surface lattice: h = 2*l0 + l1, k = -2(l0+l1)
    DivisorClass hp = 2 * l0 + l1;
    DivisorClass kp = -2 * (l0 + l1);
    ok = ok && intersect(hp, kp) == -6;
    r.pass = ok;
    r.detail = "delta_S3(8,-8)=8=1+1+2+2+2, delta_P3(4,-6)=3=1+1+1, genus(h)=1, genus(l0)=0";
    return r;
}

// ---- criterion 7: type III topology ----
CheckResult criterion7(const Ctx& ctx) {
    CheckResult r{"7", "type III: isolated double circle, linking, Euler characteristic",
                  false, false, "", 0};
    ProductSurface s = ctx.surf(2);
    ProjectionSpec stereo;
    PolylineCurve circle = unit_circle_z0();

    double m1 = separation(s, stereo, circle, 128);
    double m2 = separation(s, stereo, circle, 256);
    double m3 = separation(s, stereo, circle, 512);
    bool margins_ok = m1 > 0 && m2 > 0 && m3 > 0 && std::abs(m1 - 0.5) < 0.01 &&
                      std::abs(m2 - m1) < 1e-3 && std::abs(m3 - m1) < 1e-3;

    PolylineCurve core = torus_core(s, stereo, 256, 128);
    LinkingResult lk = linking_number(circle, core);
    bool link_ok = std::abs(lk.value) == 1 && lk.residue < 0.1;

    Mesh mesh = sample_grid(s, 64, 64, stereo);
    bool euler_ok = euler_characteristic(mesh) == 0;

    r.pass = margins_ok && link_ok && euler_ok;
    r.detail = "margin=" + fmt(m2) + " (refinements " + fmt(m1) + "/" + fmt(m3) +
               "), linking=" + std::to_string(lk.value) + " residue=" + fmt(lk.residue) +
               ", chi=" + std::to_string(euler_characteristic(mesh));
    return r;
}

// ---- criterion 8: type I touching tori ----
CheckResult criterion8(const Ctx& ctx) {
    CheckResult r{"8", "type I: touching tori certificate", false, false, "", 0};
    ProductSurface s = ctx.surf(0);
    ProjectionSpec stereo;
    TouchingToriReport rep = touching_tori_certificate(s, stereo);

    // the common circle is pi(A0), the unit circle in z=0
    PolylineCurve circle = unit_circle_z0();
    PolylineCurve boundary;
    boundary.closed = true;
    for (int i = 0; i < 256; ++i) {
        double a = kTau * i / 256;
        QuatD q = s.eval_angles(a, rep.split_angles[0]);
        StereographicD sp;
        boundary.pts.push_back(sp(q));
    }
    double d_common = hausdorff(boundary, circle);
    bool common_ok = d_common < 1e-3;

    r.pass = rep.pass && common_ok;
    std::ostringstream detail;
    for (const auto& c : rep.checks)
        detail << c.name << "=" << (c.pass ? "ok" : "FAIL") << "(" << fmt(c.value) << ") ";
    detail << "common_circle_dist=" << fmt(d_common);
    r.detail = detail.str();
    return r;
}

// ---- criterion 9: Moebius and Clifford properties ----
CheckResult criterion9(const Ctx& ctx) {
    CheckResult r{"9", "isoclinic law, ruling-family preservation, circles to circles", false,
                  false, "", 0};
    SplitMix64 rng(ctx.seed ^ 0x9a5eb0071ull);
    bool ok = true;

    // isoclinic inner-product law <x, a*x> = Re(a), exact, 100 samples
    for (int i = 0; i < 100 && ok; ++i) {
        UnitQuatR a = random_unit_quat(rng);
        UnitQuatR x = random_unit_quat(rng);
        ok = dot(x.quat(), hamilton(a.quat(), x.quat())) == a.quat().w;
    }
    bool isoclinic_ok = ok;

    // ruling-family preservation under 20 left and 20 right translations
    bool family_ok = true;
    for (int i = 0; i < 20 && family_ok; ++i) {
        UnitQuatR a = random_unit_quat(rng);
        ProjMap5R L = left_translation(a);
        ProjMap5R R = right_translation(a);
        family_ok = family_ok && is_elliptic(L) && is_elliptic(R);
        for (int j = 0; j < 5 && family_ok; ++j) {
            GaussRat mu(rng.small_rat(9), rng.small_rat(9));
            GaussRat one(Rat(1));
            for (GeneratorFamily fam : {GeneratorFamily::left, GeneratorFamily::right}) {
                GeneratorLine line = generator_line(fam, mu, one);
                family_ok = family_ok && classify_generator(apply(L, line)).family == fam &&
                            classify_generator(apply(R, line)).family == fam;
            }
        }
    }

    // stereographic projection sends circles avoiding the center to circles
    bool circles_ok = true;
    StereographicD sp;
    for (int i = 0; i < 10 && circles_ok; ++i) {
        UnitQuatR u = random_unit_quat(rng);
        UnitQuatR v = random_unit_quat(rng);
        RationalCircleParam c =
            ctx.b[0].transformed(left_mult_matrix(u.quat()));
        c = c.transformed(right_mult_matrix(v.quat()));
        std::vector<Vec3d> img;
        bool usable = true;
        for (int k = 0; k < 16; ++k) {
            QuatD q = c.eval_angle(kTau * k / 16);
            if (1 - q.z < 0.05) {
                usable = false;
                break;
            }
            img.push_back(sp(q));
        }
        if (!usable) continue;
        circles_ok = circles_ok && circle_fit_residual(img) < 1e-10;
    }

    r.pass = isoclinic_ok && family_ok && circles_ok;
    r.detail = std::string("isoclinic=") + (isoclinic_ok ? "ok" : "FAIL") +
               " families=" + (family_ok ? "ok" : "FAIL") +
               " circle_images=" + (circles_ok ? "ok" : "FAIL");
    return r;
}

// ---- criterion 10: double-curve recovery ----
CheckResult criterion10(const Ctx& ctx) {
    CheckResult r{"10", "double curve of pi(A0*B1) is the unit circle (Hausdorff 1e-6)", false,
                  false, "", 0};
    ProductSurface s = ctx.surf(0);
    ProjectionSpec stereo;
    DoubleCurveOptions opts;
    opts.target_points = 4096;
    auto curves = double_curve(s, stereo, opts);
    if (curves.empty()) {
        r.detail = "no double curve found";
        return r;
    }
    // measure against the exact unit circle in z = 0
    double worst = 0;
    const PolylineCurve& img = curves[0].image;
    for (const auto& p : img.pts) {
        double d = std::hypot(std::hypot(p[0], p[1]) - 1.0, p[2]);
        worst = std::max(worst, d);
    }
    for (int i = 0; i < 16384; ++i) {
        double t = kTau * i / 16384;
        worst = std::max(worst, distance_to_curve({std::cos(t), std::sin(t), 0.0}, img));
    }
    r.pass = curves.size() == 1 && !curves[0].tangential && worst < 1e-6;
    r.detail = "components=" + std::to_string(curves.size()) + " hausdorff=" + fmt(worst);
    return r;
}

CheckResult timed(const std::string& id, const std::string& name,
                  std::function<CheckResult()> f) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = f();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    // stable ids and names regardless of which branch produced the result
    r.id = id;
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

CheckResult skipped(const std::string& id, const std::string& name) {
    CheckResult r;
    r.id = id;
    r.name = name;
    r.pass = true;
    r.skipped = true;
    r.detail = "skipped";
    return r;
}

}  // namespace

std::vector<CheckResult> run_battery(const BatteryOptions& opts) {
    Ctx ctx{opts.seed};
    std::vector<CheckResult> out;

    auto run_exact = [&](const std::string& id, const std::string& name, auto f) {
        out.push_back(opts.skip_exact ? skipped(id, name) : timed(id, name, f));
    };
    auto run_float = [&](const std::string& id, const std::string& name, auto f) {
        out.push_back(opts.skip_float ? skipped(id, name) : timed(id, name, f));
    };

    run_exact("1", "on-sphere identities", [&] {
        CheckResult r = criterion1(ctx);
        return r;
    });
    // enforce the stated runtime bounds on the exact quick checks
    if (!out.back().skipped) out.back().pass = out.back().pass && out.back().seconds < 1.0;

    run_exact("2", "intersection multiplicities", [&] { return criterion2(ctx); });
    if (!out.back().skipped) out.back().pass = out.back().pass && out.back().seconds < 1.0;

    std::vector<DegreeCertificate> octics, quartics;
    run_exact("3", "degree certification",
              [&] { return criterion3(ctx, octics, quartics); });
    run_exact("4", "singular-locus gradients", [&] {
        if (octics.size() != 3 || quartics.size() != 3) {
            CheckResult r{"4", "singular-locus gradients", false, false,
                          "missing certificates from criterion 3", 0};
            return r;
        }
        return criterion4(octics, quartics);
    });
    run_exact("5", "hyperplane-section decomposition", [&] { return criterion5(ctx); });
    run_exact("6", "lattice bookkeeping", [&] { return criterion6(); });
    run_float("7", "type III topology", [&] { return criterion7(ctx); });
    if (!out.back().skipped) out.back().pass = out.back().pass && out.back().seconds < 30.0;
    run_float("8", "type I touching tori", [&] { return criterion8(ctx); });
    run_exact("9", "Moebius/Clifford properties", [&] { return criterion9(ctx); });
    run_float("10", "double-curve recovery", [&] { return criterion10(ctx); });
    return out;
}

bool battery_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

nlohmann::json battery_report(const std::vector<CheckResult>& results,
                              const BatteryOptions& opts) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results)
        checks.push_back({{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"skipped", r.skipped},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    bool partial = opts.skip_exact || opts.skip_float;
    return nlohmann::json{{"criteria", checks},
                          {"pass", battery_passed(results)},
                          {"partial", partial},
                          {"seed", opts.seed}};
}

}  // namespace starsurf
