#pragma once

// Homogeneous binary forms over Q and bidegree forms in two parameter pairs.
// These carry the exact parametrizations: circle coordinates are quadratic
// binary forms in (v:w), product-surface coordinates are bidegree-(2,2)
// forms in (u:s),(v:w).

#include <vector>

#include "starsurf/scalar.hpp"

namespace starsurf {

// c[i] is the coefficient of v^(d-i) w^i, i = 0..d.
struct BinForm {
    std::vector<Rat> c;

    BinForm() : c{Rat(0)} {}
    explicit BinForm(std::vector<Rat> coeffs) : c(std::move(coeffs)) {}
    static BinForm zero(int degree) { return BinForm(std::vector<Rat>(degree + 1, Rat(0))); }
    static BinForm quadratic(Rat a, Rat b, Rat cc) {
        return BinForm({std::move(a), std::move(b), std::move(cc)});
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const;

    Rat eval(const Rat& v, const Rat& w) const;
    double evalf(double v, double w) const;

    friend BinForm operator+(const BinForm& a, const BinForm& b);
    friend BinForm operator-(const BinForm& a, const BinForm& b);
    friend BinForm operator*(const BinForm& a, const BinForm& b);
    friend BinForm operator*(const Rat& k, const BinForm& a);
    friend bool operator==(const BinForm& a, const BinForm& b);

    // integer coefficients, content 1, first nonzero coefficient positive
    BinForm primitive() const;
};

// gcd of two binary forms (primitive output; zero form if both are zero)
BinForm binform_gcd(const BinForm& f, const BinForm& g);

// real projective root structure of a quadratic (or lower-degree) form
struct QuadRoots {
    int distinct_real = 0;        // number of distinct real projective roots
    bool double_root = false;     // true when a real root has multiplicity 2
    // roots as (v, w) pairs, |(v,w)| = 1, w >= 0
    std::vector<std::array<double, 2>> roots;
};

QuadRoots analyze_quadratic(const BinForm& f);

// Bidegree (da, db) form: at(i,j) multiplies u^(da-i) s^i v^(db-j) w^j.
struct BiForm {
    int da = 0, db = 0;
    std::vector<Rat> c;  // (da+1)*(db+1), row-major over i

    BiForm() : c{Rat(0)} {}
    BiForm(int da_, int db_) : da(da_), db(db_), c((da_ + 1) * (db_ + 1), Rat(0)) {}

    Rat& at(int i, int j) { return c[i * (db + 1) + j]; }
    const Rat& at(int i, int j) const { return c[i * (db + 1) + j]; }

    bool is_zero() const;
    Rat eval(const Rat& u, const Rat& s, const Rat& v, const Rat& w) const;
    double evalf(double u, double s, double v, double w) const;

    // the (v,w)-form obtained by fixing the (u,s) monomial index i
    BinForm right_slice(int i) const;
    // the (u,s)-form obtained by fixing the (v,w) monomial index j
    BinForm left_slice(int j) const;

    friend BiForm operator+(const BiForm& a, const BiForm& b);
    friend BiForm operator-(const BiForm& a, const BiForm& b);
    friend BiForm operator*(const BiForm& a, const BiForm& b);
    friend bool operator==(const BiForm& a, const BiForm& b);

    // product of pure left/right factors f(u,s) * g(v,w)
    static BiForm separable(const BinForm& f, const BinForm& g);
};

// gcd of all right slices: the (v,w)-content of P
BinForm content_right(const BiForm& p);
BinForm content_left(const BiForm& p);

// exact division of P by a right-factor g(v,w); throws if not divisible
BiForm divide_right(const BiForm& p, const BinForm& g);
BiForm divide_left(const BiForm& p, const BinForm& f);

}  // namespace starsurf
