// starsurf: construct, classify, mesh, implicitize and verify surfaces in the
// unit 3-sphere swept by quaternion products of circles.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "starsurf/battery.hpp"
#include "starsurf/classify.hpp"
#include "starsurf/implicit.hpp"
#include "starsurf/io.hpp"
#include "starsurf/lattice.hpp"
#include "starsurf/surface.hpp"
#include "starsurf/topology.hpp"

using namespace starsurf;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string left = "A0";
    std::string right = "B1";
    std::string side = "lr";
    std::string project = "stereo:default";
    std::uint64_t seed = kDefaultSeed;
};

Side parse_side(const std::string& s) {
    if (s == "lr" || s == "left_times_right") return Side::left_times_right;
    if (s == "rl" || s == "right_times_left") return Side::right_times_left;
    throw CLI::ValidationError("--side must be lr or rl");
}

ProductSurface build_surface(const CommonArgs& args) {
    RationalCircleParam left = resolve_circle_spec(args.left);
    RationalCircleParam right = resolve_circle_spec(args.right);
    return ProductSurface::build(left, right, parse_side(args.side));
}

void add_surface_flags(CLI::App* cmd, CommonArgs& args, bool with_projection = true) {
    cmd->add_option("--left", args.left, "left circle: preset name, JSON, or JSON file");
    cmd->add_option("--right", args.right, "right circle: preset name, JSON, or JSON file");
    cmd->add_option("--side", args.side, "product order: lr (left*right) or rl");
    if (with_projection)
        cmd->add_option("--project", args.project,
                        "projection: stereo:default, stereo:cx,cy,cz,cw or central");
    cmd->add_option("--seed", args.seed, "seed for all deterministic sampling");
}

void write_or_print(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << content;
}

int cmd_classify(const CommonArgs& args) {
    RationalCircleParam great = resolve_circle_spec(args.left);
    RationalCircleParam small = resolve_circle_spec(args.right);
    ClassifyResult res = classify(great, small);
    json j = certificate_to_json(great_type_name(res.type), res.checks);
    if (res.reduced) {
        j["reduction"] = {
            {"applied", true},
            {"left_translation",
             {rat_to_string(res.translation.w), rat_to_string(res.translation.x),
              rat_to_string(res.translation.y), rat_to_string(res.translation.z)}}};
    } else {
        j["reduction"] = {{"applied", false}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_mesh(const CommonArgs& args, int nu, int nv, const std::string& out,
             const std::string& format) {
    ProductSurface surf = build_surface(args);
    ProjectionSpec proj = ProjectionSpec::parse(args.project);
    Mesh mesh = sample_grid(surf, nu, nv, proj);
    std::ostringstream os;
    if (format == "obj") write_obj(mesh, os);
    else if (format == "ply") write_ply(mesh, os);
    else throw CLI::ValidationError("--format must be obj or ply for mesh");
    write_or_print(out, os.str());
    std::cerr << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.faces.size()
              << " faces, chi=" << euler_characteristic(mesh) << "\n";
    return 0;
}

int cmd_implicitize(const CommonArgs& args, int dmax, const std::string& out) {
    ProductSurface surf = build_surface(args);
    ProjectionSpec proj = ProjectionSpec::parse(args.project);
    DegreeCertificate cert = certify_degree(surf, proj, dmax, args.seed);
    json j = implicit_to_json(cert.poly);
    j["kernel_dim"] = cert.kernel_dim;
    j["dims_below"] = cert.dims_below;
    write_or_print(out, j.dump(2) + "\n");
    std::cerr << "certified degree " << cert.degree << " with kernel dimension "
              << cert.kernel_dim << "\n";
    return 0;
}

int cmd_lattice() {
    DivisorClass l0{1, 0}, l1{0, 1};
    DivisorClass h8 = 2 * l0 + 2 * l1;
    std::cout << "lattice <l0,l1>: l0^2 = l1^2 = 0, l0.l1 = 1\n";
    std::cout << "degree-8 surface in the Moebius quadric: h = 2l0+2l1, k = -h\n";
    std::cout << "  h^2 = " << self_intersection(h8)
              << ", sectional genus = " << arithmetic_genus(h8, -h8) << ", delta = "
              << rat_to_string(delta_S3(8, intersect(h8, -h8)))
              << " = 1+1+2+2+2 (two double generators each, double circle)\n";
    DivisorClass hp = 2 * l0 + l1;
    DivisorClass kp = -2 * (l0 + l1);
    std::cout << "central projection, degree 4 in P^3: h = 2l0+l1, k = -2(l0+l1)\n";
    std::cout << "  h.k = " << intersect(hp, kp) << ", delta = "
              << rat_to_string(delta_P3(4, intersect(hp, kp)))
              << " = 1+1+1 (two double generators, double line)\n";
    std::cout << "circle classes: genus(l0) = " << arithmetic_genus(l0, -h8)
              << " (circles are rational)\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& skips, std::uint64_t seed,
               const std::string& out) {
    BatteryOptions opts;
    opts.seed = seed;
    for (const auto& s : skips) {
        if (s == "exact") opts.skip_exact = true;
        else if (s == "float") opts.skip_float = true;
        else throw CLI::ValidationError("--skip accepts: exact, float");
    }
    std::vector<CheckResult> results = run_battery(opts);
    for (const auto& r : results) {
        std::cout << (r.skipped ? "[SKIP]" : r.pass ? "[PASS]" : "[FAIL]") << " " << r.id
                  << ": " << r.name;
        if (!r.skipped) std::cout << " (" << r.detail << ") [" << r.seconds << "s]";
        std::cout << "\n";
    }
    json report = battery_report(results, opts);
    if (!out.empty()) write_or_print(out, report.dump(2) + "\n");
    return battery_passed(results) ? 0 : 1;
}

int cmd_project(const std::string& projspec, const std::string& point,
                const std::string& circle, int count) {
    ProjectionSpec proj = ProjectionSpec::parse(projspec);
    json out = json::array();
    auto emit = [&](const QuatR& q) {
        if (proj.kind == ProjectionSpec::Kind::central) {
            auto h = central_projection(q);
            out.push_back({rat_to_string(h[0]), rat_to_string(h[1]), rat_to_string(h[2]),
                           rat_to_string(h[3])});
        } else {
            StereographicR sp = proj.stereo_exact();
            Vec3<Rat> img = sp(q);
            out.push_back({rat_to_string(img[0]), rat_to_string(img[1]), rat_to_string(img[2])});
        }
    };
    if (!point.empty()) {
        std::stringstream ss(point);
        std::array<Rat, 4> c;
        std::string item;
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(ss, item, ','))
                throw CLI::ValidationError("--point needs w,x,y,z");
            auto r = parse_rat(item);
            if (!r) throw CLI::ValidationError("--point: bad rational " + item);
            c[i] = *r;
        }
        emit(QuatR{c[0], c[1], c[2], c[3]});
    } else {
        RationalCircleParam p = resolve_circle_spec(circle);
        for (int k = 0; k < count; ++k) {
            // rational parameters spread over the projective line
            long v = k - count / 2;
            emit(p.eval(rat(v), rat(1)));
        }
        emit(p.eval(rat(1), rat(0)));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surfaces in S^3 containing a great and a small circle through each point"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonArgs args;

    auto* classify_cmd = app.add_subcommand(
        "classify", "great type (I/II/III) of the product of a great and a small circle");
    CommonArgs classify_args;
    add_surface_flags(classify_cmd, classify_args, false);

    auto* mesh_cmd = app.add_subcommand("mesh", "sample a quad mesh of the projected surface");
    CommonArgs mesh_args;
    int nu = 64, nv = 64;
    std::string mesh_out, mesh_format = "obj";
    add_surface_flags(mesh_cmd, mesh_args);
    mesh_cmd->add_option("--nu", nu, "grid resolution along the left circle");
    mesh_cmd->add_option("--nv", nv, "grid resolution along the right circle");
    mesh_cmd->add_option("--out", mesh_out, "output path (default stdout)");
    mesh_cmd->add_option("--format", mesh_format, "obj or ply");

    auto* impl_cmd = app.add_subcommand(
        "implicitize", "certify the minimal implicit degree and export the polynomial");
    CommonArgs impl_args;
    int dmax = 8;
    std::string impl_out;
    add_surface_flags(impl_cmd, impl_args);
    impl_cmd->add_option("--dmax", dmax, "largest degree to try");
    impl_cmd->add_option("--out", impl_out, "output path for the JSON (default stdout)");

    auto* lattice_cmd =
        app.add_subcommand("lattice", "print the divisor-lattice delta/genus chains");

    auto* verify_cmd =
        app.add_subcommand("verify", "run the full verification battery, JSON report");
    std::vector<std::string> skips;
    std::string verify_out;
    std::uint64_t verify_seed = kDefaultSeed;
    verify_cmd->add_option("--skip", skips, "skip a mode: exact or float");
    verify_cmd->add_option("--seed", verify_seed, "seed for the battery");
    verify_cmd->add_option("--out", verify_out, "write the JSON report here");

    auto* project_cmd =
        app.add_subcommand("project", "apply a projection to a point or circle samples");
    std::string proj_spec = "stereo:default", proj_point, proj_circle = "A0";
    int proj_count = 8;
    project_cmd->add_option("--project", proj_spec, "projection spec");
    project_cmd->add_option("--point", proj_point, "exact point w,x,y,z on S^3");
    project_cmd->add_option("--circle", proj_circle, "circle spec to sample");
    project_cmd->add_option("--count", proj_count, "number of circle samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(classify_args);
        if (mesh_cmd->parsed()) return cmd_mesh(mesh_args, nu, nv, mesh_out, mesh_format);
        if (impl_cmd->parsed()) return cmd_implicitize(impl_args, dmax, impl_out);
        if (lattice_cmd->parsed()) return cmd_lattice();
        if (verify_cmd->parsed()) return cmd_verify(skips, verify_seed, verify_out);
        if (project_cmd->parsed())
            return cmd_project(proj_spec, proj_point, proj_circle, proj_count);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
