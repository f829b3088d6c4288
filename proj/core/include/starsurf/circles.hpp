#pragma once

// Circles in S^3. The canonical representation is a plane pair:
// the circle is S^3 /\ {x.n1 = d1} /\ {x.n2 = d2} with n1 _|_ n2.
//
// In exact mode the normals are primitive integer vectors (not unit: the
// presets' planes have no rational unit normal), with offsets scaled along;
// every predicate here is invariant under that scaling. Float-mode circles
// carry unit normals to 1e-12.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "starsurf/binform.hpp"
#include "starsurf/quat.hpp"

namespace starsurf {

template <class S>
struct Circle {
    Vec4<S> n1{}, n2{};
    S d1{}, d2{};

    // scale-invariant validity: orthogonal normals, positive radius
    void validate() const;

    bool is_great() const { return d1 == S(0) && d2 == S(0); }

    Vec4<S> center() const;
    S radius2() const;
};

using CircleR = Circle<Rat>;
using CircleD = Circle<double>;

// normalize an exact circle to primitive integer normals
CircleR normalized(CircleR c);

enum class CirclePreset { A0, B1, B2, B3 };

std::optional<CirclePreset> preset_from_string(const std::string& name);
std::string preset_name(CirclePreset p);

// Exact parametrization: four coordinates as quadratic binary forms in the
// projective parameter (v:w) over a common positive denominator.
struct RationalCircleParam {
    std::array<BinForm, 4> num;
    BinForm den;

    QuatR eval(const Rat& v, const Rat& w) const;
    QuatD evalf(double v, double w) const;
    // angle evaluation through the projective Weierstrass substitution;
    // theta = pi maps to (v:w) = (1:0)
    QuatD eval_angle(double theta) const;

    // sum of squared numerators == den^2 as an exact quartic identity
    bool on_sphere_certificate() const;

    // image under an exact 4x4 linear map of R^4 (e.g. a Clifford translation)
    RationalCircleParam transformed(const Mat4<Rat>& m) const;

    // substitution (v,w) -> (a v + b w, c v + d w), ad - bc != 0
    RationalCircleParam reparametrized(const Rat& a, const Rat& b, const Rat& c,
                                       const Rat& d) const;
};

// the paper-normal-form circles A0, B1, B2, B3
RationalCircleParam named_circle(CirclePreset preset);

// float-coefficient evaluation cache for hot sampling loops
struct CircleEvalD {
    std::array<std::array<double, 3>, 4> num{};
    std::array<double, 3> den{};

    QuatD evalf(double v, double w) const {
        double m0 = v * v, m1 = v * w, m2 = w * w;
        double d = den[0] * m0 + den[1] * m1 + den[2] * m2;
        auto coord = [&](int i) {
            return (num[i][0] * m0 + num[i][1] * m1 + num[i][2] * m2) / d;
        };
        return {coord(0), coord(1), coord(2), coord(3)};
    }

    QuatD eval_angle(double theta) const {
        return evalf(std::sin(theta / 2), std::cos(theta / 2));
    }

    // point and derivative with respect to the angle
    void eval_angle_jet(double theta, QuatD& p, QuatD& dp) const {
        double v = std::sin(theta / 2), w = std::cos(theta / 2);
        double dv = w / 2, dw = -v / 2;
        double m0 = v * v, m1 = v * w, m2 = w * w;
        double D = den[0] * m0 + den[1] * m1 + den[2] * m2;
        double Dd = (2 * den[0] * v + den[1] * w) * dv + (den[1] * v + 2 * den[2] * w) * dw;
        std::array<double, 4> val, der;
        for (int i = 0; i < 4; ++i) {
            double N = num[i][0] * m0 + num[i][1] * m1 + num[i][2] * m2;
            double Nd = (2 * num[i][0] * v + num[i][1] * w) * dv +
                        (num[i][1] * v + 2 * num[i][2] * w) * dw;
            val[i] = N / D;
            der[i] = (Nd * D - N * Dd) / (D * D);
        }
        p = {val[0], val[1], val[2], val[3]};
        dp = {der[0], der[1], der[2], der[3]};
    }
};

CircleEvalD make_eval(const RationalCircleParam& p);

// chord parametrization of the circle through an exact on-circle point;
// denominator positive definite, injective on P^1(R)
RationalCircleParam rational_param_through(const CircleR& circle, const Vec4<Rat>& point);

// bounded search for an exact rational point of the circle; nullopt if none
// found within the height budget
std::optional<Vec4<Rat>> find_rational_point(const CircleR& circle, long height_budget = 24);

// exact plane-pair form fitted through sampled points of the parametrization
CircleR plane_form(const RationalCircleParam& p);

// float plane-pair of an exact circle (unit normals)
CircleD to_float(const CircleR& c);

// angle parametrization of a float circle (orthonormal frame completion)
std::function<Vec4d(double)> parametrize(const CircleD& circle);

struct MeetResult {
    int q = 0;            // number of distinct real intersection points
    bool tangent = false; // true when the intersection has multiplicity 2
    BinForm common;       // exact gcd of the two composed quadratics
    std::vector<std::array<double, 2>> roots;  // real roots as (v,w), |.|=1
};

// Intersection of a small circle (exact parametrization) with a great circle
// (exact plane pair): composes both linear forms with the parametrization and
// counts common real projective roots by exact gcd and discriminant sign.
MeetResult meet_great_circle(const RationalCircleParam& small, const CircleR& great);

// float-mode variant; |disc| below 1e-10 * coefficient scale is reported as
// numerically tangent via the `warning` flag
struct MeetResultF {
    int q = 0;
    bool tangent = false;
    bool warning = false;
};
MeetResultF meet_great_circle_float(const RationalCircleParam& small, const CircleD& great);

}  // namespace starsurf
