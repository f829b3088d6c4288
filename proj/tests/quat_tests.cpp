#include "doctest.h"
#include "starsurf/circles.hpp"
#include "starsurf/projective.hpp"
#include "starsurf/quat.hpp"

using namespace starsurf;

namespace {

QuatR qr(long w, long x, long y, long z) {
    return {rat(w), rat(x), rat(y), rat(z)};
}

// independent expansion of (cos s + i sin s) * (b0 + b1 i + b3 k)
QuatR rotor_times_b(const Rat& c, const Rat& s, const Rat& b0, const Rat& b1, const Rat& b3) {
    return {b0 * c - b1 * s, b0 * s + b1 * c, -b3 * s, b3 * c};
}

}  // namespace

TEST_CASE("hamilton product multiplication table") {
    CHECK(hamilton(QuatR::i(), QuatR::j()) == QuatR::k());
    CHECK(hamilton(QuatR::j(), QuatR::k()) == QuatR::i());
    CHECK(hamilton(QuatR::k(), QuatR::i()) == QuatR::j());
    CHECK(hamilton(QuatR::i(), QuatR::i()) == -QuatR::one());

    QuatR q = qr(3, -5, 7, 11);
    CHECK(hamilton(QuatR::one(), q) == q);
    CHECK(hamilton(q, QuatR::one()) == q);
}

TEST_CASE("rotor times planar quaternion expands as derived") {
    // left factor on the 1-i circle, right factor with vanishing j part
    SplitMix64 rng(7);
    for (int it = 0; it < 25; ++it) {
        // rational point of the unit circle via the half-angle substitution
        Rat t = rng.small_rat(9);
        Rat den = 1 + t * t;
        Rat c = (1 - t * t) / den, s = 2 * t / den;
        Rat b0 = rng.small_rat(9), b1 = rng.small_rat(9), b3 = rng.small_rat(9);
        QuatR a{c, s, Rat(0), Rat(0)};
        QuatR b{b0, b1, Rat(0), b3};
        CHECK(hamilton(a, b) == rotor_times_b(c, s, b0, b1, b3));
    }
}

TEST_CASE("conjugate and inverse") {
    CHECK(QuatR::i().conjugate() == -QuatR::i());
    CHECK(UnitQuatR::k().inverse().quat() == -QuatR::k());

    // B2 at (v:w) = (1:0), i.e. beta = pi, evaluates to the identity
    RationalCircleParam b2 = named_circle(CirclePreset::B2);
    QuatR p = b2.eval(rat(1), rat(0));
    CHECK(p == QuatR::one());
    CHECK(UnitQuatR(p).inverse().quat() == QuatR::one());

    CHECK_THROWS_AS(UnitQuatR(qr(1, 1, 0, 0)), std::domain_error);
}

TEST_CASE("unit inverse is a two-sided inverse, exactly") {
    SplitMix64 rng(99);
    for (int it = 0; it < 20; ++it) {
        UnitQuatR q = random_unit_quat(rng);
        CHECK(hamilton(q.quat(), q.inverse().quat()) == QuatR::one());
        CHECK(hamilton(q.inverse().quat(), q.quat()) == QuatR::one());
    }
}

TEST_CASE("norm multiplicativity over random rational quaternions") {
    SplitMix64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        QuatR a{rng.small_rat(20), rng.small_rat(20), rng.small_rat(20), rng.small_rat(20)};
        QuatR b{rng.small_rat(20), rng.small_rat(20), rng.small_rat(20), rng.small_rat(20)};
        CHECK(hamilton(a, b).norm2() == a.norm2() * b.norm2());
    }
}

TEST_CASE("associativity holds, commutativity fails") {
    SplitMix64 rng(5);
    for (int it = 0; it < 25; ++it) {
        QuatR a{rng.small_rat(9), rng.small_rat(9), rng.small_rat(9), rng.small_rat(9)};
        QuatR b{rng.small_rat(9), rng.small_rat(9), rng.small_rat(9), rng.small_rat(9)};
        QuatR c{rng.small_rat(9), rng.small_rat(9), rng.small_rat(9), rng.small_rat(9)};
        CHECK(hamilton(hamilton(a, b), c) == hamilton(a, hamilton(b, c)));
    }
    CHECK(hamilton(QuatR::i(), QuatR::j()) == -hamilton(QuatR::j(), QuatR::i()));
}

TEST_CASE("isoclinic inner-product law <x, a*x> = Re(a)") {
    SplitMix64 rng(11);
    for (int it = 0; it < 40; ++it) {
        UnitQuatR a = random_unit_quat(rng);
        UnitQuatR x = random_unit_quat(rng);
        CHECK(dot(x.quat(), hamilton(a.quat(), x.quat())) == a.quat().w);
    }
}

TEST_CASE("gamma and its inverse") {
    // scale invariance
    ProjPoint5R p({rat(2), rat(2), rat(0), rat(0), rat(0)});
    CHECK(gamma(p) == qr(1, 0, 0, 0));

    CHECK(projectively_equal(gamma_inv(QuatR::i()),
                             ProjPoint5R({rat(1), rat(0), rat(1), rat(0), rat(0)})));

    ProjPoint5R s({rat(1), rat(3, 5), rat(4, 5), rat(0), rat(0)});
    QuatR q = gamma(s);
    CHECK(q == QuatR{rat(3, 5), rat(4, 5), rat(0), rat(0)});
    CHECK(q.norm2() == 1);  // a point of S^3

    CHECK_THROWS_AS(gamma(ProjPoint5R({rat(0), rat(1), rat(0), rat(0), rat(0)})),
                    std::domain_error);

    // gamma o gamma_inv is the identity on rational quaternions
    SplitMix64 rng(3);
    for (int it = 0; it < 10; ++it) {
        QuatR r{rng.small_rat(9), rng.small_rat(9), rng.small_rat(9), rng.small_rat(9)};
        CHECK(gamma(gamma_inv(r)) == r);
    }
}

TEST_CASE("projective equality via vanishing minors") {
    ProjPoint5R a({rat(1), rat(2), rat(3), rat(4), rat(5)});
    ProjPoint5R b({rat(-2), rat(-4), rat(-6), rat(-8), rat(-10)});
    ProjPoint5R c({rat(1), rat(2), rat(3), rat(4), rat(6)});
    CHECK(projectively_equal(a, b));
    CHECK_FALSE(projectively_equal(a, c));
    CHECK_THROWS_AS(ProjPoint5R({rat(0), rat(0), rat(0), rat(0), rat(0)}),
                    std::domain_error);
}
