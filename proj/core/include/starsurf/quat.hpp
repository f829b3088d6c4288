#pragma once

// Quaternion algebra over either scalar mode. A quaternion (w,x,y,z) is the
// point (x1,x2,x3,x4) of R^4, basis order (1,i,j,k); the real axis is x1 and
// the great circle A0 lies in the 1-i plane.

#include <array>
#include <cmath>
#include <stdexcept>

#include "starsurf/scalar.hpp"

namespace starsurf {

template <class S>
using Vec3 = std::array<S, 3>;
template <class S>
using Vec4 = std::array<S, 4>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;

template <class S>
S dot(const Vec4<S>& a, const Vec4<S>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

template <class S>
S dot3(const Vec3<S>& a, const Vec3<S>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
struct Quat {
    S w{}, x{}, y{}, z{};

    Quat() = default;
    Quat(S w_, S x_, S y_, S z_)
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    static Quat one() { return {S(1), S(0), S(0), S(0)}; }
    static Quat i() { return {S(0), S(1), S(0), S(0)}; }
    static Quat j() { return {S(0), S(0), S(1), S(0)}; }
    static Quat k() { return {S(0), S(0), S(0), S(1)}; }

    Vec4<S> coords() const { return {w, x, y, z}; }
    static Quat from_coords(const Vec4<S>& v) { return {v[0], v[1], v[2], v[3]}; }

    S norm2() const { return w * w + x * x + y * y + z * z; }
    Quat conjugate() const { return {w, -x, -y, -z}; }

    friend Quat operator+(const Quat& a, const Quat& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quat operator-(const Quat& a, const Quat& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend Quat operator*(const S& c, const Quat& q) {
        return {c * q.w, c * q.x, c * q.y, c * q.z};
    }
    friend bool operator==(const Quat& a, const Quat& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

using QuatR = Quat<Rat>;
using QuatD = Quat<double>;

template <class S>
Quat<S> hamilton(const Quat<S>& a, const Quat<S>& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class S>
S dot(const Quat<S>& a, const Quat<S>& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline bool unit_norm_ok(const Rat& norm2) { return norm2 == 1; }
inline bool unit_norm_ok(double norm2) { return std::abs(norm2 - 1.0) <= 1e-12; }

// Unit quaternion: |q|^2 = 1 exactly in rational mode, to 1e-12 in double mode.
template <class S>
class UnitQuat {
public:
    explicit UnitQuat(Quat<S> q) : q_(std::move(q)) {
        if (!unit_norm_ok(q_.norm2()))
            throw std::domain_error("UnitQuat: norm^2 != 1");
    }

    static UnitQuat one() { return UnitQuat(Quat<S>::one()); }
    static UnitQuat i() { return UnitQuat(Quat<S>::i()); }
    static UnitQuat j() { return UnitQuat(Quat<S>::j()); }
    static UnitQuat k() { return UnitQuat(Quat<S>::k()); }

    const Quat<S>& quat() const { return q_; }

    // For unit quaternions the inverse is the conjugate.
    UnitQuat inverse() const { return UnitQuat(q_.conjugate()); }

    friend UnitQuat operator*(const UnitQuat& a, const UnitQuat& b) {
        return UnitQuat(hamilton(a.q_, b.q_));
    }

private:
    Quat<S> q_;
};

using UnitQuatR = UnitQuat<Rat>;
using UnitQuatD = UnitQuat<double>;

// Random exact unit quaternion: inverse stereographic image of a random
// small-height rational 3-vector (always exactly on S^3).
inline UnitQuatR random_unit_quat(SplitMix64& rng, long height = 9) {
    Rat X = rng.small_rat(height), Y = rng.small_rat(height), Z = rng.small_rat(height);
    Rat rho2 = X * X + Y * Y + Z * Z;
    Rat d = rho2 + 1;
    return UnitQuatR(QuatR{2 * X / d, 2 * Y / d, 2 * Z / d, (rho2 - 1) / d});
}

// 4x4 matrix of x -> a*x (left) and x -> x*b (right) in basis (1,i,j,k).
template <class S>
using Mat4 = std::array<std::array<S, 4>, 4>;

template <class S>
Mat4<S> left_mult_matrix(const Quat<S>& a) {
    return {{{a.w, -a.x, -a.y, -a.z},
             {a.x, a.w, -a.z, a.y},
             {a.y, a.z, a.w, -a.x},
             {a.z, -a.y, a.x, a.w}}};
}

template <class S>
Mat4<S> right_mult_matrix(const Quat<S>& b) {
    return {{{b.w, -b.x, -b.y, -b.z},
             {b.x, b.w, b.z, -b.y},
             {b.y, -b.z, b.w, b.x},
             {b.z, b.y, -b.x, b.w}}};
}

template <class S>
Vec4<S> apply(const Mat4<S>& m, const Vec4<S>& v) {
    Vec4<S> out{};
    for (int i = 0; i < 4; ++i)
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    return out;
}

}  // namespace starsurf
