#include "starsurf/moebius.hpp"

#include <stdexcept>

namespace starsurf {

ProjMap5R left_translation(const UnitQuatR& a) {
    return ProjMap5R::from_block(left_mult_matrix(a.quat()));
}

ProjMap5R right_translation(const UnitQuatR& b) {
    return ProjMap5R::from_block(right_mult_matrix(b.quat()));
}

namespace {

struct Ruling {
    GaussRat u, vb, s, t;
};

Ruling ruling_coords(const GVec5& x) {
    GaussRat i(Rat(0), Rat(1));
    return {x[1] + i * x[2], x[1] - i * x[2], -(x[3] + i * x[4]), x[3] - i * x[4]};
}

bool proportional4(const std::array<GaussRat, 4>& a, const std::array<GaussRat, 4>& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!((a[i] * b[j] - a[j] * b[i]).is_zero())) return false;
    return true;
}

std::pair<GaussRat, GaussRat> ratio_of(const std::array<GaussRat, 4>& a,
                                       const std::array<GaussRat, 4>& b) {
    for (int i = 0; i < 4; ++i)
        if (!b[i].is_zero()) return {a[i], b[i]};
    for (int i = 0; i < 4; ++i)
        if (!a[i].is_zero()) return {a[i], b[i]};
    throw std::logic_error("generator ratio: degenerate line data");
}

}  // namespace

bool on_elliptic_absolute(const GVec5& x) {
    if (!x[0].is_zero()) return false;
    GaussRat s;
    for (int i = 1; i < 5; ++i) s = s + x[i] * x[i];
    bool nonzero = false;
    for (const auto& c : x)
        if (!c.is_zero()) nonzero = true;
    return nonzero && s.is_zero();
}

bool line_on_absolute(const GeneratorLine& line) {
    if (!on_elliptic_absolute(line.p) || !on_elliptic_absolute(line.q)) return false;
    GVec5 mid;
    for (int i = 0; i < 5; ++i) mid[i] = line.p[i] + line.q[i];
    // the midpoint may coincide with a zero vector only if p = -q, i.e. the
    // same projective point; reject that as degenerate
    bool nonzero = false;
    for (const auto& c : mid)
        if (!c.is_zero()) nonzero = true;
    if (!nonzero) return false;
    return on_elliptic_absolute(mid);
}

GeneratorLine generator_line(GeneratorFamily family, const GaussRat& m0, const GaussRat& m1) {
    if (m0.is_zero() && m1.is_zero())
        throw std::invalid_argument("generator_line: parameter (0:0)");
    GaussRat i(Rat(0), Rat(1));
    GeneratorLine line;
    if (family == GeneratorFamily::left) {
        line.p = {GaussRat(), m0, -(i * m0), -m1, i * m1};
        line.q = {GaussRat(), m1, i * m1, m0, i * m0};
    } else {
        line.p = {GaussRat(), m0, -(i * m0), m1, i * m1};
        line.q = {GaussRat(), m1, i * m1, -m0, i * m0};
    }
    if (!line_on_absolute(line))
        throw std::logic_error("generator_line: construction left the absolute");
    return line;
}

GeneratorClass classify_generator(const GeneratorLine& line) {
    if (!line_on_absolute(line))
        throw std::invalid_argument("classify_generator: line not on the elliptic absolute");
    Ruling rp = ruling_coords(line.p);
    Ruling rq = ruling_coords(line.q);

    // left family: (u, t) = lambda (s, vb) on every point of the line
    std::array<GaussRat, 4> ln = {rp.u, rq.u, rp.t, rq.t};
    std::array<GaussRat, 4> ld = {rp.s, rq.s, rp.vb, rq.vb};
    if (proportional4(ln, ld)) {
        auto [m0, m1] = ratio_of(ln, ld);
        return {GeneratorFamily::left, m0, m1};
    }
    // right family: (u, s) = mu (t, vb)
    std::array<GaussRat, 4> rn = {rp.u, rq.u, rp.s, rq.s};
    std::array<GaussRat, 4> rd = {rp.t, rq.t, rp.vb, rq.vb};
    if (proportional4(rn, rd)) {
        auto [m0, m1] = ratio_of(rn, rd);
        return {GeneratorFamily::right, m0, m1};
    }
    throw std::logic_error("classify_generator: line on the absolute is in neither family");
}

GeneratorLine apply(const ProjMap5R& map, const GeneratorLine& line) {
    auto apply_pt = [&map](const GVec5& x) {
        GVec5 out;
        for (int i = 0; i < 5; ++i) {
            GaussRat acc;
            for (int j = 0; j < 5; ++j) {
                acc.re += map.m[i][j] * x[j].re;
                acc.im += map.m[i][j] * x[j].im;
            }
            out[i] = acc;
        }
        return out;
    };
    return {apply_pt(line.p), apply_pt(line.q)};
}

}  // namespace starsurf
