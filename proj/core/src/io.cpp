#include "starsurf/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace starsurf {

using nlohmann::json;

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (!j.is_string()) throw std::invalid_argument("expected rational \"p/q\" string");
    auto r = parse_rat(j.get<std::string>());
    if (!r) throw std::invalid_argument("malformed rational: " + j.get<std::string>());
    return *r;
}

json rat_json(const Rat& r) { return rat_to_string(r); }

}  // namespace

json circle_to_json(const CircleR& c) {
    json j;
    j["n1"] = {rat_json(c.n1[0]), rat_json(c.n1[1]), rat_json(c.n1[2]), rat_json(c.n1[3])};
    j["n2"] = {rat_json(c.n2[0]), rat_json(c.n2[1]), rat_json(c.n2[2]), rat_json(c.n2[3])};
    j["d1"] = rat_json(c.d1);
    j["d2"] = rat_json(c.d2);
    return j;
}

CircleR circle_from_json(const json& j) {
    auto vec = [&](const json& arr) {
        if (!arr.is_array() || arr.size() != 4)
            throw std::invalid_argument("circle JSON: normal must have 4 entries");
        Vec4<Rat> v;
        for (int i = 0; i < 4; ++i) v[i] = rat_from_json(arr[i]);
        return v;
    };
    CircleR c;
    c.n1 = vec(j.at("n1"));
    c.n2 = vec(j.at("n2"));
    c.d1 = rat_from_json(j.at("d1"));
    c.d2 = rat_from_json(j.at("d2"));
    c.validate();
    return normalized(c);
}

RationalCircleParam circle_spec_to_param(const json& j) {
    if (j.contains("preset")) {
        auto p = preset_from_string(j.at("preset").get<std::string>());
        if (!p)
            throw std::invalid_argument("unknown circle preset: " +
                                        j.at("preset").get<std::string>());
        return named_circle(*p);
    }
    CircleR c = circle_from_json(j);
    auto pt = find_rational_point(c);
    if (!pt)
        throw std::domain_error(
            "circle JSON: no rational point found within the search budget; "
            "an exact parametrization is unavailable for this circle");
    return rational_param_through(c, *pt);
}

RationalCircleParam resolve_circle_spec(const std::string& spec) {
    if (auto p = preset_from_string(spec)) return named_circle(*p);
    if (!spec.empty() && spec.front() == '{')
        return circle_spec_to_param(json::parse(spec));
    std::ifstream in(spec);
    if (!in)
        throw std::invalid_argument("circle spec '" + spec +
                                    "' is neither a preset, inline JSON, nor a readable file");
    json j;
    in >> j;
    return circle_spec_to_param(j);
}

json implicit_to_json(const ImplicitPoly& p) {
    json j;
    j["vars"] = p.basis.nvars;
    j["degree"] = p.basis.degree;
    j["order"] = "grlex";
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.get_str());
    j["coeffs"] = coeffs;
    return j;
}

ImplicitPoly implicit_from_json(const json& j) {
    ImplicitPoly p;
    int vars = j.at("vars").get<int>();
    int degree = j.at("degree").get<int>();
    if (j.at("order").get<std::string>() != "grlex")
        throw std::invalid_argument("implicit JSON: unsupported monomial order");
    p.basis = (vars == 3) ? MonomialBasis::affine3(degree) : MonomialBasis::homogeneous4(degree);
    const auto& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != p.basis.size())
        throw std::invalid_argument("implicit JSON: coefficient count mismatch");
    for (const auto& c : coeffs) {
        Rat r = rat_from_json(c);
        if (r.get_den() != 1)
            throw std::invalid_argument("implicit JSON: coefficients must be integers");
        p.coeffs.push_back(r.get_num());
    }
    return p;
}

json curve_to_json(const PolylineCurve& c) {
    json pts = json::array();
    for (const auto& p : c.pts) pts.push_back({p[0], p[1], p[2]});
    json j;
    j["closed"] = c.closed;
    j["points"] = pts;
    return j;
}

json certificate_to_json(const std::string& type, const std::vector<CertificateCheck>& checks) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}});
    return json{{"type", type}, {"checks", arr}};
}

// ---- projection spec strings ----

ProjectionSpec ProjectionSpec::parse(const std::string& text) {
    ProjectionSpec spec;
    if (text == "central") {
        spec.kind = Kind::central;
        return spec;
    }
    if (text == "stereo:default" || text == "stereo") {
        spec.kind = Kind::stereo;
        return spec;
    }
    const std::string prefix = "stereo:";
    if (text.rfind(prefix, 0) != 0)
        throw std::invalid_argument("projection spec must be stereo:default, "
                                    "stereo:cx,cy,cz,cw or central: " + text);
    std::stringstream ss(text.substr(prefix.size()));
    std::array<Rat, 4> c;
    std::string item;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, item, ','))
            throw std::invalid_argument("projection spec: expected 4 comma-separated rationals");
        auto r = parse_rat(item);
        if (!r) throw std::invalid_argument("projection spec: bad rational " + item);
        c[i] = *r;
    }
    spec.kind = Kind::stereo;
    spec.center = QuatR{c[0], c[1], c[2], c[3]};
    if (spec.center.norm2() != 1)
        throw std::invalid_argument("projection spec: stereo center must be a unit quaternion");
    return spec;
}

std::string ProjectionSpec::to_string() const {
    if (kind == Kind::central) return "central";
    if (is_default_stereo()) return "stereo:default";
    return "stereo:" + rat_to_string(center.w) + "," + rat_to_string(center.x) + "," +
           rat_to_string(center.y) + "," + rat_to_string(center.z);
}

StereographicD ProjectionSpec::stereo_float() const {
    if (is_default_stereo()) return StereographicD();
    QuatD c{to_double(center.w), to_double(center.x), to_double(center.y),
            to_double(center.z)};
    double n = std::sqrt(c.norm2());
    return StereographicD(UnitQuatD(QuatD{c.w / n, c.x / n, c.y / n, c.z / n}));
}

}  // namespace starsurf
