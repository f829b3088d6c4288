#pragma once

// Projections of S^3 (stereographic and central), inversions of R^3,
// Clifford translations as projective maps, and the two ruling families of
// the elliptic absolute {x0 = 0} /\ {x1^2+x2^2+x3^2+x4^2 = 0}.

#include <array>
#include <optional>
#include <string>

#include "starsurf/projective.hpp"
#include "starsurf/quat.hpp"

namespace starsurf {

// Stereographic projection with center (0,0,0,1): p -> (x1,x2,x3)/(1-x4).
// A general unit center c is reduced to the default by the right translation
// x -> x * (conj(c) * k), which carries c to (0,0,0,1).
template <class S>
class Stereographic {
public:
    Stereographic() : rotate_(false) {}
    explicit Stereographic(const UnitQuat<S>& center) : rotate_(true) {
        Quat<S> k = Quat<S>::k();
        g_ = hamilton(center.quat().conjugate(), k);
        center_ = center.quat();
    }

    Vec3<S> operator()(const Quat<S>& p) const {
        Quat<S> q = rotate_ ? hamilton(p, g_) : p;
        S d = S(1) - q.z;
        if (d == S(0)) throw std::domain_error("stereographic: point is the projection pole");
        return {q.w / d, q.x / d, q.y / d};
    }

    Quat<S> center() const { return rotate_ ? center_ : Quat<S>::k(); }
    bool is_default() const { return !rotate_; }
    // the rotation applied before the default formula (identity if default)
    Quat<S> pre_rotation() const { return rotate_ ? g_ : Quat<S>::one(); }

private:
    bool rotate_;
    Quat<S> g_{};
    Quat<S> center_{};
};

using StereographicR = Stereographic<Rat>;
using StereographicD = Stereographic<double>;

template <class S>
UnitQuat<S> inverse_stereographic(const Vec3<S>& x) {
    S rho2 = dot3(x, x);
    S d = rho2 + S(1);
    return UnitQuat<S>(
        Quat<S>{2 * x[0] / d, 2 * x[1] / d, 2 * x[2] / d, (rho2 - S(1)) / d});
}

// Sphere inversion: f(x) = c + r^2 (x - c)/|x - c|^2.
template <class S>
class Inversion {
public:
    Inversion(Vec3<S> center, S radius) : c_(std::move(center)), r2_(radius * radius) {
        if (!(r2_ > S(0))) throw std::invalid_argument("Inversion: radius must be positive");
    }

    Vec3<S> operator()(const Vec3<S>& x) const {
        Vec3<S> d{x[0] - c_[0], x[1] - c_[1], x[2] - c_[2]};
        S n = dot3(d, d);
        if (n == S(0)) throw std::domain_error("inversion: x equals the center");
        S f = r2_ / n;
        return {c_[0] + f * d[0], c_[1] + f * d[1], c_[2] + f * d[2]};
    }

private:
    Vec3<S> c_;
    S r2_;
};

// Clifford translations as projective maps diag(1, M).
ProjMap5R left_translation(const UnitQuatR& a);
ProjMap5R right_translation(const UnitQuatR& b);

// Central projection tau: (x0:...:x4) -> (x1:x2:x3:x4). Identifies antipodes;
// great circles map to lines.
template <class S>
std::array<S, 4> central_projection(const ProjPoint5<S>& p) {
    std::array<S, 4> out{p[1], p[2], p[3], p[4]};
    bool all_zero = true;
    for (const auto& v : out)
        if (!(v == S(0))) all_zero = false;
    if (all_zero)
        throw std::domain_error("central_projection: input is the center (1:0:0:0:0)");
    return out;
}

// affine-S^3 convenience form
template <class S>
std::array<S, 4> central_projection(const Quat<S>& q) {
    return central_projection(gamma_inv(q));
}

// ---- ruling families of the elliptic absolute ----
//
// With u = x1 + i x2, vbar = x1 - i x2, s = -(x3 + i x4), t = x3 - i x4 the
// absolute is {u*vbar = s*t}; the two families are
//   left:  u = lambda s,  t = lambda vbar
//   right: u = mu t,      s = mu vbar
// The left/right labels are calibrated so that left Clifford translations
// preserve the left family (and right translations the right family).

enum class GeneratorFamily { left, right };

using GVec5 = std::array<GaussRat, 5>;

struct GeneratorLine {
    GVec5 p, q;  // two distinct points spanning the line, both on the absolute
};

// point-on-absolute test: x0 = 0 and sum_{i>=1} xi^2 = 0 over the Gaussians
bool on_elliptic_absolute(const GVec5& x);

// line-on-absolute test (endpoints plus midpoint, enough for a quadric)
bool line_on_absolute(const GeneratorLine& line);

// generator with projective parameter (m0 : m1)
GeneratorLine generator_line(GeneratorFamily family, const GaussRat& m0, const GaussRat& m1);

struct GeneratorClass {
    GeneratorFamily family;
    GaussRat m0, m1;  // recovered projective parameter
};

// classifies a line on the absolute into its ruling family; throws if the
// line is not on the absolute
GeneratorClass classify_generator(const GeneratorLine& line);

// image of a generator under a real projective map (applied componentwise to
// real and imaginary parts)
GeneratorLine apply(const ProjMap5R& map, const GeneratorLine& line);

}  // namespace starsurf
