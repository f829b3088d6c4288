#pragma once

// Projective model: points of P^4, the quadric {-x0^2+x1^2+..+x4^2=0} whose
// real points model S^3, the coordinate bridge gamma to affine S^3, and 5x5
// projective maps with an ellipticity test.

#include <array>
#include <stdexcept>

#include "starsurf/quat.hpp"
#include "starsurf/scalar.hpp"

namespace starsurf {

template <class S>
struct ProjPoint5 {
    std::array<S, 5> x{};

    ProjPoint5() = default;
    explicit ProjPoint5(std::array<S, 5> c) : x(std::move(c)) {
        bool all_zero = true;
        for (const auto& v : x)
            if (!(v == S(0))) all_zero = false;
        if (all_zero) throw std::domain_error("ProjPoint5: zero vector");
    }

    const S& operator[](int i) const { return x[i]; }
};

using ProjPoint5R = ProjPoint5<Rat>;

// Equality up to scale: all 2x2 minors of the coordinate pair vanish.
template <class S>
bool projectively_equal(const ProjPoint5<S>& a, const ProjPoint5<S>& b) {
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!(a[i] * b[j] - a[j] * b[i] == S(0))) return false;
    return true;
}

// Value of the quadratic form -x0^2 + x1^2 + x2^2 + x3^2 + x4^2.
template <class S>
S moebius_form(const ProjPoint5<S>& p) {
    return -p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + p[4] * p[4];
}

// gamma: (x0:...:x4) -> (x1/x0,...,x4/x0), defined away from {x0=0}.
template <class S>
Quat<S> gamma(const ProjPoint5<S>& p) {
    if (p[0] == S(0))
        throw std::domain_error("gamma: point on the hyperplane x0=0");
    return {p[1] / p[0], p[2] / p[0], p[3] / p[0], p[4] / p[0]};
}

template <class S>
ProjPoint5<S> gamma_inv(const Quat<S>& q) {
    return ProjPoint5<S>({S(1), q.w, q.x, q.y, q.z});
}

template <class S>
struct ProjMap5 {
    std::array<std::array<S, 5>, 5> m{};

    static ProjMap5 identity() {
        ProjMap5 out;
        for (int i = 0; i < 5; ++i) out.m[i][i] = S(1);
        return out;
    }

    // diag(1, M) for a 4x4 block M.
    static ProjMap5 from_block(const Mat4<S>& blk) {
        ProjMap5 out;
        out.m[0][0] = S(1);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out.m[i + 1][j + 1] = blk[i][j];
        return out;
    }

    ProjPoint5<S> apply(const ProjPoint5<S>& p) const {
        std::array<S, 5> out{};
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) out[i] = out[i] + m[i][j] * p[j];
        return ProjPoint5<S>(out);
    }

    friend ProjMap5 operator*(const ProjMap5& a, const ProjMap5& b) {
        ProjMap5 out;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                S acc(0);
                for (int k = 0; k < 5; ++k) acc = acc + a.m[i][k] * b.m[k][j];
                out.m[i][j] = acc;
            }
        return out;
    }

    friend bool operator==(const ProjMap5& a, const ProjMap5& b) { return a.m == b.m; }

    S det() const {
        // elimination with exact division-free expansion is overkill at 5x5;
        // fraction elimination over the field S
        std::array<std::array<S, 5>, 5> a = m;
        S d(1);
        for (int c = 0; c < 5; ++c) {
            int piv = -1;
            for (int r = c; r < 5; ++r)
                if (!(a[r][c] == S(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) return S(0);
            if (piv != c) {
                std::swap(a[piv], a[c]);
                d = -d;
            }
            d = d * a[c][c];
            for (int r = c + 1; r < 5; ++r) {
                S f = a[r][c] / a[c][c];
                for (int k = c; k < 5; ++k) a[r][k] = a[r][k] - f * a[c][k];
            }
        }
        return d;
    }
};

using ProjMap5R = ProjMap5<Rat>;

// Elliptic transformation test: preserves the form -x0^2+sum xi^2 up to a
// nonzero scalar and maps the hyperplane {x0=0} to itself.
template <class S>
bool is_elliptic(const ProjMap5<S>& f) {
    // M^T Q M == c Q with Q = diag(-1,1,1,1,1)
    std::array<std::array<S, 5>, 5> t{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            S acc(0);
            for (int k = 0; k < 5; ++k) {
                S qk = (k == 0) ? S(-1) : S(1);
                acc = acc + f.m[k][i] * qk * f.m[k][j];
            }
            t[i][j] = acc;
        }
    S c = -t[0][0];
    if (c == S(0)) return false;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            S expected = (i != j) ? S(0) : (i == 0 ? -c : c);
            if (!(t[i][j] == expected)) return false;
        }
    // fixes {x0=0}: first row is (m00, 0, 0, 0, 0)
    for (int j = 1; j < 5; ++j)
        if (!(f.m[0][j] == S(0))) return false;
    return !(f.det() == S(0));
}

}  // namespace starsurf
