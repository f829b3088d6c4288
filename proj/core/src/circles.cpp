#include "starsurf/circles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "starsurf/linalg.hpp"

namespace starsurf {

namespace {

bool scalar_zero(const Rat& x) { return x == 0; }
bool scalar_zero(double x) { return std::abs(x) <= 1e-12; }

}  // namespace

template <class S>
void Circle<S>::validate() const {
    S nn1 = dot(n1, n1), nn2 = dot(n2, n2);
    if (scalar_zero(nn1) || scalar_zero(nn2))
        throw std::domain_error("Circle: zero normal");
    if (!scalar_zero(dot(n1, n2))) throw std::domain_error("Circle: normals not orthogonal");
    S r2 = S(1) - d1 * d1 / nn1 - d2 * d2 / nn2;
    if (!(r2 > S(0))) throw std::domain_error("Circle: empty or degenerate (radius^2 <= 0)");
}

template <class S>
Vec4<S> Circle<S>::center() const {
    S f1 = d1 / dot(n1, n1), f2 = d2 / dot(n2, n2);
    Vec4<S> c{};
    for (int i = 0; i < 4; ++i) c[i] = f1 * n1[i] + f2 * n2[i];
    return c;
}

template <class S>
S Circle<S>::radius2() const {
    return S(1) - d1 * d1 / dot(n1, n1) - d2 * d2 / dot(n2, n2);
}

template struct Circle<Rat>;
template struct Circle<double>;

namespace {

// scale (n, d) to primitive integers with first nonzero entry of n positive
void make_primitive(Vec4<Rat>& n, Rat& d) {
    Int l(1);
    for (const auto& x : n) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_den().get_mpz_t());
    Int g(0);
    auto acc = [&g](const Rat& x, const Int& l2) {
        Int v = x.get_num() * (l2 / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        return v;
    };
    std::array<Int, 5> ints;
    for (int i = 0; i < 4; ++i) ints[i] = acc(n[i], l);
    ints[4] = acc(d, l);
    if (g == 0) throw std::domain_error("Circle: zero normal");
    int sign = 0;
    for (int i = 0; i < 4; ++i)
        if (ints[i] != 0) {
            sign = ints[i] > 0 ? 1 : -1;
            break;
        }
    if (sign == 0) sign = 1;
    for (int i = 0; i < 4; ++i) n[i] = Rat(ints[i] * sign / g);
    d = Rat(ints[4] * sign / g);
}

}  // namespace

CircleR normalized(CircleR c) {
    make_primitive(c.n1, c.d1);
    make_primitive(c.n2, c.d2);
    c.validate();
    return c;
}

std::optional<CirclePreset> preset_from_string(const std::string& name) {
    if (name == "A0") return CirclePreset::A0;
    if (name == "B1") return CirclePreset::B1;
    if (name == "B2") return CirclePreset::B2;
    if (name == "B3") return CirclePreset::B3;
    return std::nullopt;
}

std::string preset_name(CirclePreset p) {
    switch (p) {
        case CirclePreset::A0: return "A0";
        case CirclePreset::B1: return "B1";
        case CirclePreset::B2: return "B2";
        case CirclePreset::B3: return "B3";
    }
    return "?";
}

QuatR RationalCircleParam::eval(const Rat& v, const Rat& w) const {
    Rat d = den.eval(v, w);
    if (d == 0) throw std::domain_error("RationalCircleParam: denominator vanishes");
    return {num[0].eval(v, w) / d, num[1].eval(v, w) / d, num[2].eval(v, w) / d,
            num[3].eval(v, w) / d};
}

QuatD RationalCircleParam::evalf(double v, double w) const {
    double d = den.evalf(v, w);
    return {num[0].evalf(v, w) / d, num[1].evalf(v, w) / d, num[2].evalf(v, w) / d,
            num[3].evalf(v, w) / d};
}

QuatD RationalCircleParam::eval_angle(double theta) const {
    return evalf(std::sin(theta / 2), std::cos(theta / 2));
}

bool RationalCircleParam::on_sphere_certificate() const {
    BinForm sum = BinForm::zero(2 * den.degree());
    for (const auto& n : num) sum = sum + n * n;
    return sum == den * den;
}

RationalCircleParam RationalCircleParam::transformed(const Mat4<Rat>& m) const {
    RationalCircleParam out;
    out.den = den;
    for (int i = 0; i < 4; ++i) {
        BinForm acc = BinForm::zero(2);
        for (int j = 0; j < 4; ++j) acc = acc + m[i][j] * num[j];
        out.num[i] = acc;
    }
    return out;
}

RationalCircleParam RationalCircleParam::reparametrized(const Rat& a, const Rat& b,
                                                        const Rat& c, const Rat& d) const {
    if (a * d - b * c == 0)
        throw std::invalid_argument("reparametrized: singular substitution");
    auto subst = [&](const BinForm& q) {
        // q(av+bw, cv+dw) for quadratic q
        BinForm vv = BinForm::quadratic(a * a, 2 * a * b, b * b);
        BinForm vw = BinForm::quadratic(a * c, a * d + b * c, b * d);
        BinForm ww = BinForm::quadratic(c * c, 2 * c * d, d * d);
        return q.c[0] * vv + q.c[1] * vw + q.c[2] * ww;
    };
    RationalCircleParam out;
    for (int i = 0; i < 4; ++i) out.num[i] = subst(num[i]);
    out.den = subst(den);
    return out;
}

CircleEvalD make_eval(const RationalCircleParam& p) {
    CircleEvalD e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) e.num[i][j] = to_double(p.num[i].c[j]);
    for (int j = 0; j < 3; ++j) e.den[j] = to_double(p.den.c[j]);
    return e;
}

RationalCircleParam named_circle(CirclePreset preset) {
    auto quad = [](long a, long b, long c) {
        return BinForm::quadratic(rat(a), rat(b), rat(c));
    };
    RationalCircleParam p;
    switch (preset) {
        case CirclePreset::A0:
            p.num = {quad(-1, 0, 1), quad(0, 2, 0), quad(0, 0, 0), quad(0, 0, 0)};
            p.den = quad(1, 0, 1);
            break;
        case CirclePreset::B1:
            p.num = {quad(4, 0, 20), quad(0, 16, 0), quad(0, 0, 0), quad(-3, 0, 21)};
            p.den = quad(5, 0, 29);
            break;
        case CirclePreset::B2:
            p.num = {quad(1, 0, 3), quad(0, 2, 0), quad(0, 0, 0), quad(0, 0, 4)};
            p.den = quad(1, 0, 5);
            break;
        case CirclePreset::B3:
            p.num = {quad(4, 0, 8), quad(0, 4, 0), quad(0, 0, 0), quad(3, 0, 15)};
            p.den = quad(5, 0, 17);
            break;
    }
    return p;
}

namespace {

// rational basis of the plane {x : x.n1 = 0, x.n2 = 0}
std::array<Vec4<Rat>, 2> plane_directions(const CircleR& c) {
    RatMatrix m = {{c.n1[0], c.n1[1], c.n1[2], c.n1[3]},
                   {c.n2[0], c.n2[1], c.n2[2], c.n2[3]}};
    RatMatrix ns = nullspace(std::move(m));
    if (ns.size() != 2) throw std::domain_error("Circle: normals do not span a plane pair");
    return {Vec4<Rat>{ns[0][0], ns[0][1], ns[0][2], ns[0][3]},
            Vec4<Rat>{ns[1][0], ns[1][1], ns[1][2], ns[1][3]}};
}

}  // namespace

RationalCircleParam rational_param_through(const CircleR& circle, const Vec4<Rat>& p0) {
    circle.validate();
    Rat nn1 = dot(circle.n1, circle.n1), nn2 = dot(circle.n2, circle.n2);
    if (dot(p0, circle.n1) != circle.d1 || dot(p0, circle.n2) != circle.d2)
        throw std::invalid_argument("rational_param_through: point not on the plane pair");
    if (dot(p0, p0) != 1)
        throw std::invalid_argument("rational_param_through: point not on S^3");
    (void)nn1;
    (void)nn2;

    auto [u, vdir] = plane_directions(circle);
    // x(l:m) = p0 - 2 <p0, d> / |d|^2 * d  with d = l*u + m*vdir
    Rat A = dot(u, u), B = dot(u, vdir), C = dot(vdir, vdir);
    Rat pu = dot(p0, u), pv = dot(p0, vdir);
    BinForm plin{std::vector<Rat>{pu, pv}};
    RationalCircleParam out;
    out.den = BinForm::quadratic(A, 2 * B, C);
    for (int i = 0; i < 4; ++i) {
        BinForm dlin{std::vector<Rat>{u[i], vdir[i]}};
        out.num[i] = p0[i] * out.den - 2 * (plin * dlin);
    }
    if (!out.on_sphere_certificate())
        throw std::logic_error("rational_param_through: chord construction left S^3");
    return out;
}

std::optional<Vec4<Rat>> find_rational_point(const CircleR& circle, long height_budget) {
    circle.validate();
    auto [u, v0] = plane_directions(circle);
    // orthogonalize v against u (rationally)
    Rat A = dot(u, u);
    Rat B = dot(u, v0);
    Vec4<Rat> v{};
    for (int i = 0; i < 4; ++i) v[i] = v0[i] - B / A * u[i];
    Rat C = dot(v, v);
    Vec4<Rat> c = circle.center();
    Rat R = circle.radius2();

    // point = c + alpha*u + beta*v with alpha^2 A + beta^2 C = R
    auto try_beta = [&](const Rat& beta) -> std::optional<Vec4<Rat>> {
        Rat rem = R - beta * beta * C;
        if (rem < 0) return std::nullopt;
        auto alpha = rat_sqrt(rem / A);
        if (!alpha) return std::nullopt;
        Vec4<Rat> p{};
        for (int i = 0; i < 4; ++i) p[i] = c[i] + *alpha * u[i] + beta * v[i];
        return p;
    };
    auto try_alpha = [&](const Rat& alpha) -> std::optional<Vec4<Rat>> {
        Rat rem = R - alpha * alpha * A;
        if (rem < 0) return std::nullopt;
        auto beta = rat_sqrt(rem / C);
        if (!beta) return std::nullopt;
        Vec4<Rat> p{};
        for (int i = 0; i < 4; ++i) p[i] = c[i] + alpha * u[i] + *beta * v[i];
        return p;
    };
    for (long q = 1; q <= height_budget; ++q)
        for (long p = -height_budget; p <= height_budget; ++p) {
            if (auto r = try_beta(rat(p, q))) return r;
            if (auto r = try_alpha(rat(p, q))) return r;
        }
    return std::nullopt;
}

CircleR plane_form(const RationalCircleParam& p) {
    // affine-linear forms a.x + e vanishing on sampled points
    static const std::array<std::array<long, 2>, 8> params = {
        {{0, 1}, {1, 1}, {-1, 1}, {1, 2}, {-1, 2}, {2, 1}, {-2, 1}, {1, 0}}};
    RatMatrix m;
    for (const auto& [pv, pw] : params) {
        QuatR q = p.eval(rat(pv), rat(pw));
        m.push_back({q.w, q.x, q.y, q.z, Rat(1)});
    }
    RatMatrix ns = nullspace(std::move(m));
    if (ns.size() > 2)
        throw std::domain_error("plane_form: parametrization degenerates to a point or line");
    if (ns.size() < 2)
        throw std::domain_error("plane_form: point set is not planar (not a circle)");

    Vec4<Rat> n1{ns[0][0], ns[0][1], ns[0][2], ns[0][3]};
    Rat d1 = -ns[0][4];
    Vec4<Rat> n2raw{ns[1][0], ns[1][1], ns[1][2], ns[1][3]};
    Rat d2 = -ns[1][4];
    // orthogonalize the second normal against the first
    Rat f = dot(n2raw, n1) / dot(n1, n1);
    Vec4<Rat> n2{};
    for (int i = 0; i < 4; ++i) n2[i] = n2raw[i] - f * n1[i];
    d2 = d2 - f * d1;

    // small circles get a basis with both offsets nonzero: when exactly one
    // offset vanishes, shear by (n1 + n2, n2 - mu n1) with mu keeping the
    // pair orthogonal
    if ((d1 == 0) != (d2 == 0)) {
        if (d1 == 0) {
            std::swap(n1, n2);
            std::swap(d1, d2);
        }
        Rat mu = dot(n2, n2) / dot(n1, n1);
        Vec4<Rat> m1{}, m2{};
        for (int i = 0; i < 4; ++i) {
            m1[i] = n1[i] + n2[i];
            m2[i] = n2[i] - mu * n1[i];
        }
        Rat e1 = d1 + d2, e2 = d2 - mu * d1;
        n1 = m1;
        n2 = m2;
        d1 = e1;
        d2 = e2;
    }

    CircleR out{n1, n2, d1, d2};
    return normalized(out);
}

CircleD to_float(const CircleR& c) {
    CircleD out;
    double l1 = std::sqrt(to_double(dot(c.n1, c.n1)));
    double l2 = std::sqrt(to_double(dot(c.n2, c.n2)));
    for (int i = 0; i < 4; ++i) {
        out.n1[i] = to_double(c.n1[i]) / l1;
        out.n2[i] = to_double(c.n2[i]) / l2;
    }
    out.d1 = to_double(c.d1) / l1;
    out.d2 = to_double(c.d2) / l2;
    return out;
}

std::function<Vec4d(double)> parametrize(const CircleD& circle) {
    circle.validate();
    // complete {n1, n2} to an orthonormal frame
    std::array<Vec4d, 2> frame;
    int found = 0;
    std::array<Vec4d, 4> candidates = {
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    std::vector<Vec4d> basis = {circle.n1, circle.n2};
    for (const auto& e : candidates) {
        if (found == 2) break;
        Vec4d r = e;
        for (const auto& b : basis) {
            double f = dot(r, b) / dot(b, b);
            for (int i = 0; i < 4; ++i) r[i] -= f * b[i];
        }
        double n = std::sqrt(dot(r, r));
        if (n < 1e-9) continue;
        for (int i = 0; i < 4; ++i) r[i] /= n;
        frame[found++] = r;
        basis.push_back(r);
    }
    if (found != 2) throw std::logic_error("parametrize: frame completion failed");
    Vec4d c = circle.center();
    double r = std::sqrt(circle.radius2());
    Vec4d u = frame[0], v = frame[1];
    return [c, r, u, v](double theta) {
        Vec4d out;
        for (int i = 0; i < 4; ++i)
            out[i] = c[i] + r * (u[i] * std::cos(theta) + v[i] * std::sin(theta));
        return out;
    };
}

MeetResult meet_great_circle(const RationalCircleParam& small, const CircleR& great) {
    great.validate();
    if (!great.is_great())
        throw std::invalid_argument("meet_great_circle: second circle is not great");
    auto compose = [&](const Vec4<Rat>& n) {
        BinForm acc = BinForm::zero(2);
        for (int i = 0; i < 4; ++i) acc = acc + n[i] * small.num[i];
        return acc;
    };
    BinForm f1 = compose(great.n1);
    BinForm f2 = compose(great.n2);
    if (f1.is_zero() && f2.is_zero())
        throw std::domain_error(
            "meet_great_circle: small circle lies in the great circle's plane pair");

    BinForm g = f1.is_zero() ? f2.primitive()
              : f2.is_zero() ? f1.primitive()
                             : binform_gcd(f1, f2);
    MeetResult out;
    out.common = g;
    if (g.degree() == 0 || g.is_zero()) {
        out.q = 0;
        return out;
    }
    QuadRoots qr = analyze_quadratic(g);
    out.q = qr.distinct_real;
    out.tangent = qr.double_root;
    out.roots = qr.roots;
    return out;
}

MeetResultF meet_great_circle_float(const RationalCircleParam& small, const CircleD& great) {
    great.validate();
    if (!(std::abs(great.d1) <= 1e-12 && std::abs(great.d2) <= 1e-12))
        throw std::invalid_argument("meet_great_circle_float: second circle is not great");
    auto compose = [&](const Vec4d& n) {
        std::array<double, 3> c{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j) c[j] += n[i] * to_double(small.num[i].c[j]);
        return c;
    };
    auto c1 = compose(great.n1);
    auto c2 = compose(great.n2);
    auto scale = [](const std::array<double, 3>& c) {
        return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
    };
    double s1 = scale(c1), s2 = scale(c2);
    double coeff_scale = std::max(s1, s2);
    if (coeff_scale < 1e-12)
        throw std::domain_error("meet_great_circle_float: contained configuration");

    MeetResultF out;
    auto disc = [](const std::array<double, 3>& c) { return c[1] * c[1] - 4 * c[0] * c[2]; };
    // treat a numerically-zero composed form as identically zero
    auto analyze_single = [&](const std::array<double, 3>& c) {
        double d = disc(c);
        double ds = std::max(c[0] * c[0] + c[1] * c[1] + c[2] * c[2], 1e-300);
        if (std::abs(d) < 1e-10 * ds) {
            out.q = 1;
            out.tangent = true;
            out.warning = true;
        } else if (d > 0) {
            out.q = 2;
        } else {
            out.q = 0;
        }
    };
    if (s1 < 1e-10 * coeff_scale) {
        analyze_single(c2);
        return out;
    }
    if (s2 < 1e-10 * coeff_scale) {
        analyze_single(c1);
        return out;
    }
    // both forms active: count common roots of the pair
    double d1v = disc(c1);
    auto roots_of = [](const std::array<double, 3>& c,
                       double dv) -> std::vector<std::array<double, 2>> {
        if (std::abs(c[0]) < 1e-14) {
            if (std::abs(c[1]) < 1e-14) return {{1, 0}};
            return {{-c[2] / c[1], 1}, {1, 0}};
        }
        if (dv < 0) return {};
        double sq = std::sqrt(std::max(0.0, dv));
        return {{(-c[1] + sq) / (2 * c[0]), 1}, {(-c[1] - sq) / (2 * c[0]), 1}};
    };
    auto evalq = [](const std::array<double, 3>& c, double v, double w) {
        return c[0] * v * v + c[1] * v * w + c[2] * w * w;
    };
    int q = 0;
    bool tangent = false;
    for (auto [rv, rw] : roots_of(c1, d1v)) {
        double n = std::hypot(rv, rw);
        rv /= n;
        rw /= n;
        if (std::abs(evalq(c2, rv, rw)) < 1e-8 * s2) {
            ++q;
            double ds = c1[0] * c1[0] + c1[1] * c1[1] + c1[2] * c1[2];
            if (std::abs(d1v) < 1e-10 * ds) {
                tangent = true;
                out.warning = true;
            }
        }
    }
    out.q = q;
    out.tangent = tangent;
    return out;
}

}  // namespace starsurf
