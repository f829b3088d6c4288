#pragma once

// Scalar layer: exact rationals (GMP-backed), Gaussian rationals for complex
// certification paths, and the deterministic RNG used everywhere sampling
// has to be reproducible.
//
// Exact mode is authoritative; double is the sampling/meshing mode. The two
// modes share operation signatures through templates higher up the stack.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace starsurf {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Parses decimal-free "p/q" (or plain "p"). Returns nullopt on garbage or q=0.
std::optional<Rat> parse_rat(const std::string& s);

// Canonical "p/q" string, "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

// Exact square root when `r` is a perfect square of a rational, else nullopt.
std::optional<Rat> rat_sqrt(const Rat& r);

inline double to_double(const Rat& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// a + b*i with exact rational a, b. Division is exact (Gaussian norm).
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// splitmix64: deterministic across platforms, unlike std::uniform_*.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long pick(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // random small-height rational, numerator in [-h,h], denominator in [1,h]
    Rat small_rat(long h) { return rat(pick(-h, h), pick(1, h)); }

private:
    std::uint64_t state_;
};

constexpr std::uint64_t kDefaultSeed = 20240901ull;

}  // namespace starsurf
