#include "starsurf/classify.hpp"

#include <stdexcept>

namespace starsurf {

ClassifyResult classify(const RationalCircleParam& great, const RationalCircleParam& small) {
    CircleR g = plane_form(great);
    CircleR s = plane_form(small);
    if (g.is_great() && s.is_great())
        throw std::invalid_argument(
            "classify: both circles are great; the product is a Clifford torus "
            "(degree 4), outside the great type I/II/III family");
    if (!g.is_great() && !s.is_great())
        throw std::invalid_argument(
            "classify: both circles are small; no classification is defined for "
            "small-small products");
    if (!g.is_great())
        throw std::invalid_argument(
            "classify: first argument must be the great circle, second the small one");

    ClassifyResult out;

    // normal position: the great circle through the identity quaternion
    RationalCircleParam small_t = small;
    CircleR great_t = g;
    Vec4<Rat> one{Rat(1), Rat(0), Rat(0), Rat(0)};
    bool through_identity = dot(g.n1, one) == 0 && dot(g.n2, one) == 0;
    if (!through_identity) {
        auto a = find_rational_point(g);
        if (!a)
            throw std::domain_error(
                "classify: no rational point on the great circle within the search "
                "budget; cannot reduce to normal position exactly");
        UnitQuatR u = UnitQuatR(QuatR{(*a)[0], (*a)[1], (*a)[2], (*a)[3]}).inverse();
        Mat4<Rat> m = left_mult_matrix(u.quat());
        small_t = small.transformed(m);
        RationalCircleParam great_param_t = great.transformed(m);
        great_t = plane_form(great_param_t);
        out.reduced = true;
        out.translation = u.quat();
    }

    MeetResult meet = meet_great_circle(small_t, great_t);
    out.q = meet.q;
    out.tangent = meet.tangent;
    switch (meet.q) {
        case 2: out.type = GreatType::I; break;
        case 1:
            if (!meet.tangent)
                throw std::domain_error(
                    "classify: one simple intersection point; not a product-surface "
                    "configuration (expected tangential contact for q=1)");
            out.type = GreatType::II;
            break;
        case 0: out.type = GreatType::III; break;
        default:
            throw std::logic_error("classify: impossible intersection count");
    }
    out.checks.push_back({"great_factor_is_great", true, 1.0});
    out.checks.push_back({"intersection_count_q", true, static_cast<double>(meet.q)});
    out.checks.push_back({"tangential", true, meet.tangent ? 1.0 : 0.0});
    out.checks.push_back({"reduced_to_normal_position", true, out.reduced ? 1.0 : 0.0});
    return out;
}

}  // namespace starsurf
