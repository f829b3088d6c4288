#include "starsurf/implicit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace starsurf {

namespace {

constexpr long kSampleHeight = 12;  // parameter height bound for sampling

std::vector<std::array<int, 4>> grlex_bucket3(int d) {
    std::vector<std::array<int, 4>> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j, 0});
    return out;
}

}  // namespace

MonomialBasis MonomialBasis::affine3(int dmax) {
    MonomialBasis b;
    b.nvars = 3;
    b.degree = dmax;
    b.homogeneous = false;
    for (int d = 0; d <= dmax; ++d)
        for (const auto& m : grlex_bucket3(d)) b.monos.push_back(m);
    return b;
}

MonomialBasis MonomialBasis::homogeneous4(int d) {
    MonomialBasis b;
    b.nvars = 4;
    b.degree = d;
    b.homogeneous = true;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
            for (int k = d - i - j; k >= 0; --k) b.monos.push_back({i, j, k, d - i - j - k});
    return b;
}

int MonomialBasis::prefix_size(int d) const {
    if (homogeneous) return size();
    int n = 0;
    for (const auto& m : monos)
        if (m[0] + m[1] + m[2] <= d) ++n;
    return n;
}

bool ImplicitPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& c) { return c == 0; });
}

Rat ImplicitPoly::eval(const std::array<Rat, 4>& x) const {
    Rat acc(0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Rat m(coeffs[i]);
        const auto& e = basis.monos[i];
        for (int v = 0; v < basis.nvars; ++v)
            for (int k = 0; k < e[v]; ++k) m *= x[v];
        acc += m;
    }
    return acc;
}

double ImplicitPoly::evalf(const std::array<double, 4>& x) const {
    double acc = 0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        double m = coeffs[i].get_d();
        const auto& e = basis.monos[i];
        for (int v = 0; v < basis.nvars; ++v) m *= std::pow(x[v], e[v]);
        acc += m;
    }
    return acc;
}

std::array<Rat, 4> ImplicitPoly::gradient(const std::array<Rat, 4>& x) const {
    std::array<Rat, 4> g{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        const auto& e = basis.monos[i];
        for (int v = 0; v < basis.nvars; ++v) {
            if (e[v] == 0) continue;
            Rat m(coeffs[i] * e[v]);
            for (int u = 0; u < basis.nvars; ++u) {
                int pow = (u == v) ? e[u] - 1 : e[u];
                for (int k = 0; k < pow; ++k) m *= x[u];
            }
            g[v] += m;
        }
    }
    return g;
}

RationalSamples rational_samples(const ProductSurface& surf, const ProjectionSpec& proj,
                                 int count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    RationalSamples out;
    out.homogeneous = proj.kind == ProjectionSpec::Kind::central;

    StereographicR sp = out.homogeneous ? StereographicR() : proj.stereo_exact();

    std::set<std::array<Rat, 4>> seen_params;
    std::set<std::array<Rat, 4>> seen_points;
    int guard = 0;
    while (static_cast<int>(out.pts.size()) < count) {
        if (++guard > 100 * count)
            throw std::domain_error("rational_samples: cannot find enough distinct samples");
        Rat u = rat(rng.pick(-kSampleHeight, kSampleHeight)), s = rat(rng.pick(1, kSampleHeight));
        Rat v = rat(rng.pick(-kSampleHeight, kSampleHeight)), w = rat(rng.pick(1, kSampleHeight));
        if (!seen_params.insert({u, s, v, w}).second) continue;
        QuatR q = surf.eval(u, s, v, w);
        std::array<Rat, 4> pt;
        if (out.homogeneous) {
            auto h = central_projection(q);
            // clear denominators and strip the content
            Int l(1);
            for (const auto& x : h)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
            Int g(0);
            std::array<Int, 4> ints;
            for (int i = 0; i < 4; ++i) {
                ints[i] = h[i].get_num() * (l / h[i].get_den());
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
            }
            int sign = 0;
            for (const auto& x : ints)
                if (x != 0) {
                    sign = x > 0 ? 1 : -1;
                    break;
                }
            for (int i = 0; i < 4; ++i) pt[i] = Rat(ints[i] * sign / g);
        } else {
            QuatR pre = sp.is_default() ? q : hamilton(q, sp.pre_rotation());
            if (pre.z == 1) continue;  // pole hit: resample
            Rat d = 1 - pre.z;
            pt = {pre.w / d, pre.x / d, pre.y / d, Rat(0)};
        }
        if (!seen_points.insert(pt).second) continue;
        out.pts.push_back(pt);
    }
    return out;
}

namespace {

// fraction-free Bareiss echelon of an integer matrix with column-ordered
// pivoting; returns pivot columns. The matrix is reduced in place.
std::vector<int> bareiss_echelon(std::vector<std::vector<Int>>& m) {
    std::vector<int> pivcols;
    if (m.empty()) return pivcols;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    Int prev(1), t;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        size_t best = ~size_t(0);
        for (int i = r; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            size_t sz = mpz_size(m[i][c].get_mpz_t());
            if (sz < best) {
                best = sz;
                piv = i;
            }
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) {
                for (int j = c + 1; j < cols; ++j) {
                    if (m[i][j] == 0) continue;
                    mpz_mul(t.get_mpz_t(), m[r][c].get_mpz_t(), m[i][j].get_mpz_t());
                    mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
            } else {
                for (int j = c + 1; j < cols; ++j) {
                    mpz_mul(t.get_mpz_t(), m[r][c].get_mpz_t(), m[i][j].get_mpz_t());
                    mpz_submul(t.get_mpz_t(), m[i][c].get_mpz_t(), m[r][j].get_mpz_t());
                    mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                m[i][c] = 0;
            }
        }
        prev = m[r][c];
        pivcols.push_back(c);
        ++r;
    }
    return pivcols;
}

// kernel vectors of the column prefix [0, ncols) of an echelonized matrix
std::vector<std::vector<Rat>> kernel_from_echelon(const std::vector<std::vector<Int>>& m,
                                                  const std::vector<int>& pivcols,
                                                  int ncols) {
    int k = 0;
    while (k < static_cast<int>(pivcols.size()) && pivcols[k] < ncols) ++k;
    std::vector<bool> is_pivot(ncols, false);
    for (int i = 0; i < k; ++i) is_pivot[pivcols[i]] = true;

    std::vector<std::vector<Rat>> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[f] = 1;
        for (int r = k - 1; r >= 0; --r) {
            int pc = pivcols[r];
            Rat acc(0);
            for (int j = pc + 1; j < ncols; ++j) {
                if (v[j] == 0) continue;
                acc += Rat(m[r][j]) * v[j];
            }
            v[pc] = -acc / Rat(m[r][pc]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
    Int l(1);
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Int g(0);
    std::vector<Int> ints;
    ints.reserve(v.size());
    for (const auto& x : v) {
        Int c = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        ints.push_back(c);
    }
    if (g == 0) return ints;
    int sign = 0;
    for (const auto& c : ints)
        if (c != 0) {
            sign = c > 0 ? 1 : -1;
            break;
        }
    for (auto& c : ints) c = c * sign / g;
    return ints;
}

std::vector<std::vector<Int>> evaluation_matrix(const RationalSamples& samples,
                                                const MonomialBasis& basis) {
    int dmax = basis.degree;
    std::vector<std::vector<Int>> m;
    m.reserve(samples.pts.size());
    for (const auto& p : samples.pts) {
        std::vector<Int> row(basis.size());
        if (samples.homogeneous) {
            std::array<Int, 4> n;
            for (int i = 0; i < 4; ++i) {
                if (p[i].get_den() != 1)
                    throw std::invalid_argument("evaluation_matrix: homogeneous samples "
                                                "must be integral");
                n[i] = p[i].get_num();
            }
            std::array<std::vector<Int>, 4> pw;
            for (int v = 0; v < 4; ++v) {
                pw[v].resize(dmax + 1);
                pw[v][0] = 1;
                for (int k = 1; k <= dmax; ++k) pw[v][k] = pw[v][k - 1] * n[v];
            }
            for (int c = 0; c < basis.size(); ++c) {
                const auto& e = basis.monos[c];
                row[c] = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]];
            }
        } else {
            // common denominator E: row entries n1^a n2^b n3^c E^(dmax-a-b-c)
            Int E(1);
            for (int i = 0; i < 3; ++i)
                mpz_lcm(E.get_mpz_t(), E.get_mpz_t(), p[i].get_den().get_mpz_t());
            std::array<Int, 3> n;
            for (int i = 0; i < 3; ++i) n[i] = p[i].get_num() * (E / p[i].get_den());
            std::array<std::vector<Int>, 4> pw;
            for (int v = 0; v < 3; ++v) {
                pw[v].resize(dmax + 1);
                pw[v][0] = 1;
                for (int k = 1; k <= dmax; ++k) pw[v][k] = pw[v][k - 1] * n[v];
            }
            pw[3].resize(dmax + 1);
            pw[3][0] = 1;
            for (int k = 1; k <= dmax; ++k) pw[3][k] = pw[3][k - 1] * E;
            for (int c = 0; c < basis.size(); ++c) {
                const auto& e = basis.monos[c];
                int deg = e[0] + e[1] + e[2];
                row[c] = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][dmax - deg];
            }
        }
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

std::vector<ImplicitPoly> vanishing_kernel(const RationalSamples& samples,
                                           const MonomialBasis& basis) {
    if (static_cast<int>(samples.pts.size()) < basis.size() + 40)
        throw std::invalid_argument("vanishing_kernel: need at least basis.size() + 40 samples");
    auto m = evaluation_matrix(samples, basis);
    auto pivcols = bareiss_echelon(m);
    auto vecs = kernel_from_echelon(m, pivcols, basis.size());
    std::vector<ImplicitPoly> out;
    for (auto& v : vecs) {
        ImplicitPoly p;
        p.basis = basis;
        p.coeffs = primitive_integer(v);
        out.push_back(std::move(p));
    }
    return out;
}

DegreeCertificate certify_degree(const ProductSurface& surf, const ProjectionSpec& proj,
                                 int d_max, std::uint64_t seed) {
    if (d_max < 1) throw std::invalid_argument("certify_degree: d_max must be >= 1");
    const bool homogeneous = proj.kind == ProjectionSpec::Kind::central;

    DegreeCertificate cert;
    if (!homogeneous) {
        MonomialBasis full = MonomialBasis::affine3(d_max);
        RationalSamples samples = rational_samples(surf, proj, full.size() + 40, seed);
        auto m = evaluation_matrix(samples, full);
        auto pivcols = bareiss_echelon(m);

        int found = -1;
        for (int d = 1; d <= d_max; ++d) {
            int sz = full.prefix_size(d);
            int rank = 0;
            for (int c : pivcols)
                if (c < sz) ++rank;
            int dim = sz - rank;
            if (dim > 0) {
                found = d;
                cert.kernel_dim = dim;
                break;
            }
            cert.dims_below.push_back(dim);
        }
        if (found < 0)
            throw std::domain_error("certify_degree: no vanishing polynomial up to d_max");
        cert.degree = found;

        MonomialBasis basis = MonomialBasis::affine3(found);
        auto vecs = kernel_from_echelon(m, pivcols, basis.size());
        if (vecs.empty()) throw std::logic_error("certify_degree: kernel extraction failed");
        cert.poly.basis = basis;
        cert.poly.coeffs = primitive_integer(vecs[0]);

        for (const auto& p : samples.pts)
            if (cert.poly.eval(p) != 0)
                throw std::logic_error("certify_degree: witness fails on a training sample");
    } else {
        RationalSamples samples;
        int found = -1;
        for (int d = 1; d <= d_max; ++d) {
            MonomialBasis basis = MonomialBasis::homogeneous4(d);
            samples = rational_samples(surf, proj, basis.size() + 40, seed);
            auto kers = vanishing_kernel(samples, basis);
            if (!kers.empty()) {
                found = d;
                cert.kernel_dim = static_cast<int>(kers.size());
                cert.poly = kers[0];
                break;
            }
            cert.dims_below.push_back(0);
        }
        if (found < 0)
            throw std::domain_error("certify_degree: no vanishing polynomial up to d_max");
        cert.degree = found;
    }

    // fresh-sample certificate
    RationalSamples fresh = rational_samples(surf, proj, 50, seed ^ 0xf4e5a5eed1ull);
    for (const auto& p : fresh.pts)
        if (cert.poly.eval(p) != 0)
            throw std::logic_error("certify_degree: witness fails on a fresh sample");
    return cert;
}

bool gradient_vanishes_on(const ImplicitPoly& poly,
                          const std::vector<std::array<Rat, 4>>& points) {
    for (const auto& p : points) {
        if (poly.eval(p) != 0)
            throw std::domain_error("gradient_vanishes_on: point is not on the surface");
        auto g = poly.gradient(p);
        for (int v = 0; v < poly.basis.nvars; ++v)
            if (g[v] != 0) return false;
    }
    return true;
}

}  // namespace starsurf
