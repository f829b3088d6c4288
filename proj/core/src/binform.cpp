#include "starsurf/binform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starsurf {

bool BinForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
}

Rat BinForm::eval(const Rat& v, const Rat& w) const {
    // Horner in v with w-powers
    Rat acc(0), wp(1);
    int d = degree();
    for (int i = 0; i <= d; ++i) {
        Rat vp(1);
        for (int k = 0; k < d - i; ++k) vp *= v;
        acc += c[i] * vp * wp;
        wp *= w;
    }
    return acc;
}

double BinForm::evalf(double v, double w) const {
    double acc = 0;
    int d = degree();
    for (int i = 0; i <= d; ++i)
        acc += to_double(c[i]) * std::pow(v, d - i) * std::pow(w, i);
    return acc;
}

BinForm operator+(const BinForm& a, const BinForm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("BinForm: degree mismatch");
    BinForm out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
    return out;
}

BinForm operator-(const BinForm& a, const BinForm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("BinForm: degree mismatch");
    BinForm out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
    return out;
}

BinForm operator*(const BinForm& a, const BinForm& b) {
    BinForm out = BinForm::zero(a.degree() + b.degree());
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

BinForm operator*(const Rat& k, const BinForm& a) {
    BinForm out = a;
    for (auto& x : out.c) x *= k;
    return out;
}

bool operator==(const BinForm& a, const BinForm& b) { return a.c == b.c; }

BinForm BinForm::primitive() const {
    Int l(1);
    for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> ints;
    ints.reserve(c.size());
    Int g(0);
    for (const auto& x : c) {
        Int v = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    if (g == 0) return BinForm::zero(degree());
    int sign = 0;
    for (const auto& v : ints)
        if (v != 0) {
            sign = (v > 0) ? 1 : -1;
            break;
        }
    BinForm out = BinForm::zero(degree());
    for (size_t i = 0; i < ints.size(); ++i) out.c[i] = Rat(ints[i] * sign / g);
    return out;
}

namespace {

// univariate poly over Q, coefficients descending in degree, lead != 0
using UPoly = std::vector<Rat>;

UPoly trim(UPoly p) {
    size_t i = 0;
    while (i + 1 < p.size() && p[i] == 0) ++i;
    return UPoly(p.begin() + i, p.end());
}

UPoly upoly_rem(UPoly a, const UPoly& b) {
    a = trim(a);
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        Rat f = a[0] / b[0];
        for (size_t i = 0; i < b.size(); ++i) a[i] -= f * b[i];
        a = trim(UPoly(a.begin() + 1, a.end()));
        if (a.empty()) a = {Rat(0)};
    }
    return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    a = trim(a);
    b = trim(b);
    auto zero = [](const UPoly& p) { return p.size() == 1 && p[0] == 0; };
    while (!zero(b)) {
        UPoly r = upoly_rem(a, b);
        a = b;
        b = r;
    }
    Rat lead = a[0];
    for (auto& x : a) x /= lead;
    return a;
}

}  // namespace

BinForm binform_gcd(const BinForm& f, const BinForm& g) {
    if (f.is_zero() && g.is_zero()) return BinForm();
    if (f.is_zero()) return g.primitive();
    if (g.is_zero()) return f.primitive();

    auto split = [](const BinForm& p, int& wmult, int& vmult, UPoly& core) {
        int d = p.degree();
        int lead = 0;
        while (p.c[lead] == 0) ++lead;  // w-multiplicity
        int trail = 0;
        while (p.c[d - trail] == 0) ++trail;  // v-multiplicity
        wmult = lead;
        vmult = trail;
        core.assign(p.c.begin() + lead, p.c.end() - trail);
    };
    int wf, vf, wg, vg;
    UPoly cf, cg;
    split(f, wf, vf, cf);
    split(g, wg, vg, cg);

    UPoly core_gcd = upoly_gcd(cf, cg);
    int wm = std::min(wf, wg), vm = std::min(vf, vg);

    // rehomogenize: core_gcd (descending in t = v/w) of degree dc, then
    // multiply by v^vm w^wm
    int dc = static_cast<int>(core_gcd.size()) - 1;
    BinForm out = BinForm::zero(dc + wm + vm);
    for (int i = 0; i <= dc; ++i) out.c[wm + i] = core_gcd[i];
    return out.primitive();
}

QuadRoots analyze_quadratic(const BinForm& f) {
    if (f.degree() > 2) throw std::invalid_argument("analyze_quadratic: degree > 2");
    QuadRoots out;
    if (f.is_zero()) throw std::invalid_argument("analyze_quadratic: zero form");

    auto push = [&out](double v, double w) {
        double n = std::hypot(v, w);
        v /= n;
        w /= n;
        if (w < 0 || (w == 0 && v < 0)) {
            v = -v;
            w = -w;
        }
        out.roots.push_back({v, w});
    };

    Rat a(0), b(0), cc(0);
    int d = f.degree();
    if (d == 2) {
        a = f.c[0];
        b = f.c[1];
        cc = f.c[2];
    } else if (d == 1) {
        b = f.c[0];
        cc = f.c[1];
    } else {
        // nonzero constant: no roots
        out.distinct_real = 0;
        return out;
    }

    if (a == 0) {
        if (b == 0) {
            // f = cc * w^d: root at (1:0), double when d == 2
            out.distinct_real = 1;
            out.double_root = (d == 2);
            push(1, 0);
            return out;
        }
        // linear in t: root t = -cc/b, plus root at infinity if d==2
        out.distinct_real = (d == 2) ? 2 : 1;
        push(to_double(-cc), to_double(b));
        if (d == 2) push(1, 0);
        return out;
    }

    Rat disc = b * b - 4 * a * cc;
    if (disc > 0) {
        out.distinct_real = 2;
        double da = to_double(a), db = to_double(b), sq = std::sqrt(to_double(disc));
        push((-db + sq) / (2 * da), 1.0);
        push((-db - sq) / (2 * da), 1.0);
    } else if (disc == 0) {
        out.distinct_real = 1;
        out.double_root = true;
        push(to_double(-b) / (2 * to_double(a)), 1.0);
    } else {
        out.distinct_real = 0;
    }
    return out;
}

bool BiForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
}

Rat BiForm::eval(const Rat& u, const Rat& s, const Rat& v, const Rat& w) const {
    Rat acc(0);
    for (int i = 0; i <= da; ++i) {
        Rat left(1);
        for (int k = 0; k < da - i; ++k) left *= u;
        for (int k = 0; k < i; ++k) left *= s;
        Rat row(0);
        for (int j = 0; j <= db; ++j) {
            Rat right(1);
            for (int k = 0; k < db - j; ++k) right *= v;
            for (int k = 0; k < j; ++k) right *= w;
            row += at(i, j) * right;
        }
        acc += left * row;
    }
    return acc;
}

double BiForm::evalf(double u, double s, double v, double w) const {
    double acc = 0;
    for (int i = 0; i <= da; ++i)
        for (int j = 0; j <= db; ++j)
            acc += to_double(at(i, j)) * std::pow(u, da - i) * std::pow(s, i) *
                   std::pow(v, db - j) * std::pow(w, j);
    return acc;
}

BinForm BiForm::right_slice(int i) const {
    BinForm out = BinForm::zero(db);
    for (int j = 0; j <= db; ++j) out.c[j] = at(i, j);
    return out;
}

BinForm BiForm::left_slice(int j) const {
    BinForm out = BinForm::zero(da);
    for (int i = 0; i <= da; ++i) out.c[i] = at(i, j);
    return out;
}

BiForm operator+(const BiForm& a, const BiForm& b) {
    if (a.da != b.da || a.db != b.db) throw std::invalid_argument("BiForm: bidegree mismatch");
    BiForm out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
    return out;
}

BiForm operator-(const BiForm& a, const BiForm& b) {
    if (a.da != b.da || a.db != b.db) throw std::invalid_argument("BiForm: bidegree mismatch");
    BiForm out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
    return out;
}

BiForm operator*(const BiForm& a, const BiForm& b) {
    BiForm out(a.da + b.da, a.db + b.db);
    for (int i = 0; i <= a.da; ++i)
        for (int j = 0; j <= a.db; ++j) {
            if (a.at(i, j) == 0) continue;
            for (int k = 0; k <= b.da; ++k)
                for (int l = 0; l <= b.db; ++l)
                    out.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
        }
    return out;
}

bool operator==(const BiForm& a, const BiForm& b) {
    return a.da == b.da && a.db == b.db && a.c == b.c;
}

BiForm BiForm::separable(const BinForm& f, const BinForm& g) {
    BiForm out(f.degree(), g.degree());
    for (int i = 0; i <= f.degree(); ++i)
        for (int j = 0; j <= g.degree(); ++j) out.at(i, j) = f.c[i] * g.c[j];
    return out;
}

BinForm content_right(const BiForm& p) {
    BinForm g;
    bool first = true;
    for (int i = 0; i <= p.da; ++i) {
        BinForm s = p.right_slice(i);
        if (s.is_zero()) continue;
        g = first ? s.primitive() : binform_gcd(g, s);
        first = false;
    }
    if (first) return BinForm();
    return g;
}

BinForm content_left(const BiForm& p) {
    BinForm g;
    bool first = true;
    for (int j = 0; j <= p.db; ++j) {
        BinForm s = p.left_slice(j);
        if (s.is_zero()) continue;
        g = first ? s.primitive() : binform_gcd(g, s);
        first = false;
    }
    if (first) return BinForm();
    return g;
}

namespace {

// divide binary form a by b exactly (both in the same variable pair)
BinForm binform_div_exact(const BinForm& a, const BinForm& b) {
    if (b.is_zero()) throw std::invalid_argument("binform division by zero");
    int da = a.degree(), db = b.degree();
    if (a.is_zero()) return BinForm::zero(std::max(0, da - db));
    if (da < db) throw std::invalid_argument("binform division: degree too small");
    // long division in the graded coefficient sequence; b may have leading
    // zeros (w-multiplicity), shift both sides accordingly
    int lead = 0;
    while (b.c[lead] == 0) ++lead;
    // a must then be divisible by w^lead as well
    for (int i = 0; i < lead; ++i)
        if (!(a.c[i] == 0)) throw std::invalid_argument("binform division: not divisible");
    std::vector<Rat> r(a.c.begin() + lead, a.c.end());
    std::vector<Rat> d(b.c.begin() + lead, b.c.end());
    int dq = da - db;
    std::vector<Rat> q(dq + 1, Rat(0));
    for (int i = 0; i <= dq; ++i) {
        Rat f = r[i] / d[0];
        q[i] = f;
        for (size_t j = 0; j < d.size(); ++j) r[i + j] -= f * d[j];
    }
    for (const auto& x : r)
        if (!(x == 0)) throw std::invalid_argument("binform division: nonzero remainder");
    return BinForm(std::move(q));
}

}  // namespace

BiForm divide_right(const BiForm& p, const BinForm& g) {
    BiForm out(p.da, p.db - g.degree());
    for (int i = 0; i <= p.da; ++i) {
        BinForm q = binform_div_exact(p.right_slice(i), g);
        for (int j = 0; j <= out.db; ++j) out.at(i, j) = q.c[j];
    }
    return out;
}

BiForm divide_left(const BiForm& p, const BinForm& f) {
    BiForm out(p.da - f.degree(), p.db);
    for (int j = 0; j <= p.db; ++j) {
        BinForm q = binform_div_exact(p.left_slice(j), f);
        for (int i = 0; i <= out.da; ++i) out.at(i, j) = q.c[i];
    }
    return out;
}

}  // namespace starsurf
