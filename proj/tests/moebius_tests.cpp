#include <cmath>

#include "doctest.h"
#include "starsurf/circles.hpp"
#include "starsurf/moebius.hpp"
#include "starsurf/topology.hpp"

using namespace starsurf;

TEST_CASE("stereographic projection, default center") {
    StereographicR sp;
    CHECK(sp(QuatR::one()) == Vec3<Rat>{rat(1), rat(0), rat(0)});
    CHECK(sp(QuatR{rat(0), rat(0), rat(0), rat(-1)}) == Vec3<Rat>{rat(0), rat(0), rat(0)});
    CHECK_THROWS_AS(sp(QuatR::k()), std::domain_error);

    // pi(A0) is the unit circle in z = 0
    RationalCircleParam a0 = named_circle(CirclePreset::A0);
    for (long k = -5; k <= 5; ++k) {
        Vec3<Rat> img = sp(a0.eval(rat(k), rat(1)));
        CHECK(img[0] * img[0] + img[1] * img[1] == 1);
        CHECK(img[2] == 0);
    }
}

TEST_CASE("inverse stereographic projection is the exact inverse") {
    CHECK(inverse_stereographic(Vec3<Rat>{rat(0), rat(0), rat(0)}).quat() ==
          QuatR{rat(0), rat(0), rat(0), rat(-1)});
    CHECK(inverse_stereographic(Vec3<Rat>{rat(1), rat(0), rat(0)}).quat() == QuatR::one());
    CHECK(inverse_stereographic(Vec3<Rat>{rat(1, 2), rat(0), rat(0)}).quat() ==
          QuatR{rat(4, 5), rat(0), rat(0), rat(-3, 5)});

    StereographicR sp;
    SplitMix64 rng(31);
    for (int it = 0; it < 20; ++it) {
        Vec3<Rat> x{rng.small_rat(9), rng.small_rat(9), rng.small_rat(9)};
        UnitQuatR q = inverse_stereographic(x);
        CHECK(sp(q.quat()) == x);
    }
}

TEST_CASE("stereographic projection from a general rational center") {
    QuatR c{rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)};
    StereographicR sp((UnitQuatR(c)));
    CHECK_THROWS_AS(sp(c), std::domain_error);  // the center is the pole
    // any other rational unit point projects to an exact rational image
    QuatR p{rat(3, 5), rat(4, 5), rat(0), rat(0)};
    Vec3<Rat> img = sp(p);
    UnitQuatR back = inverse_stereographic(img);
    // the projection is the rotated default projection, so undo it
    QuatR g = sp.pre_rotation();
    CHECK(hamilton(back.quat(), g.conjugate()) == p);
}

TEST_CASE("inversion in a sphere") {
    Inversion<Rat> inv({rat(0), rat(0), rat(0)}, rat(1));
    Vec3<Rat> img = inv(Vec3<Rat>{rat(2), rat(0), rat(0)});
    CHECK(img == Vec3<Rat>{rat(1, 2), rat(0), rat(0)});

    // points of the inversion sphere are fixed
    Vec3<Rat> fixed{rat(3, 5), rat(4, 5), rat(0)};
    CHECK(inv(fixed) == fixed);

    // involution
    SplitMix64 rng(8);
    for (int it = 0; it < 20; ++it) {
        Vec3<Rat> x{rng.small_rat(7), rng.small_rat(7), rng.small_rat(7)};
        if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
        CHECK(inv(inv(x)) == x);
    }
    CHECK_THROWS_AS(inv(Vec3<Rat>{rat(0), rat(0), rat(0)}), std::domain_error);
}

TEST_CASE("inversion maps circles to circles") {
    Inversion<double> inv({0.3, -0.2, 1.1}, 1.7);
    // a circle in R^3 not through the center
    std::vector<Vec3d> img;
    for (int k = 0; k < 12; ++k) {
        double t = 6.283185307179586 * k / 12;
        Vec3d x{2 + std::cos(t), std::sin(t), 0.5};
        img.push_back(inv(x));
    }
    CHECK(circle_fit_residual(img) < 1e-10);
}

TEST_CASE("Clifford translations as projective maps") {
    ProjMap5R id = left_translation(UnitQuatR::one());
    CHECK(id == ProjMap5R::identity());

    ProjMap5R li = left_translation(UnitQuatR::i());
    ProjPoint5R one({rat(1), rat(1), rat(0), rat(0), rat(0)});
    CHECK(projectively_equal(li.apply(one),
                             ProjPoint5R({rat(1), rat(0), rat(1), rat(0), rat(0)})));

    // composition law: L(a) L(b) = L(a * b)
    SplitMix64 rng(17);
    for (int it = 0; it < 10; ++it) {
        UnitQuatR a = random_unit_quat(rng), b = random_unit_quat(rng);
        CHECK(left_translation(a) * left_translation(b) == left_translation(a * b));
        CHECK(right_translation(b) * right_translation(a) == right_translation(a * b));
    }
}

TEST_CASE("elliptic flag") {
    SplitMix64 rng(23);
    for (int it = 0; it < 10; ++it) {
        UnitQuatR a = random_unit_quat(rng);
        CHECK(is_elliptic(left_translation(a)));
        CHECK(is_elliptic(right_translation(a)));
    }
    // a map that scales one coordinate is not elliptic
    ProjMap5R bad = ProjMap5R::identity();
    bad.m[1][1] = rat(2);
    CHECK_FALSE(is_elliptic(bad));
    // a map moving the hyperplane x0 = 0 is not elliptic either
    ProjMap5R shear = ProjMap5R::identity();
    shear.m[0][1] = rat(1);
    CHECK_FALSE(is_elliptic(shear));
}

TEST_CASE("central projection") {
    ProjPoint5R p({rat(1), rat(0), rat(1), rat(0), rat(0)});
    auto img = central_projection(p);
    CHECK(img == std::array<Rat, 4>{rat(0), rat(1), rat(0), rat(0)});

    // antipodal affine points have the same image
    QuatR q{rat(3, 5), rat(0), rat(4, 5), rat(0)};
    auto i1 = central_projection(q);
    auto i2 = central_projection(-q);
    // projectively equal: cross-minors vanish
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) CHECK(i1[a] * i2[b] - i1[b] * i2[a] == 0);

    // tau(A0) lies on the line {x3 = x4 = 0}
    RationalCircleParam a0 = named_circle(CirclePreset::A0);
    for (long k = -3; k <= 3; ++k) {
        auto img2 = central_projection(a0.eval(rat(k), rat(1)));
        CHECK(img2[2] == 0);
        CHECK(img2[3] == 0);
    }

    CHECK_THROWS_AS(central_projection(ProjPoint5R({rat(1), rat(0), rat(0), rat(0), rat(0)})),
                    std::domain_error);
}

TEST_CASE("generator lines lie on the absolute and classify back") {
    SplitMix64 rng(37);
    for (int it = 0; it < 10; ++it) {
        GaussRat mu(rng.small_rat(9), rng.small_rat(9));
        if (mu.is_zero()) continue;
        for (GeneratorFamily fam : {GeneratorFamily::left, GeneratorFamily::right}) {
            GeneratorLine line = generator_line(fam, mu, GaussRat(Rat(1)));
            CHECK(line_on_absolute(line));
            GeneratorClass cls = classify_generator(line);
            CHECK(cls.family == fam);
            // recovered parameter agrees projectively
            CHECK((cls.m0 * GaussRat(Rat(1)) - cls.m1 * mu).is_zero());
        }
    }
    CHECK_THROWS_AS(generator_line(GeneratorFamily::left, GaussRat(), GaussRat()),
                    std::invalid_argument);
}

TEST_CASE("family labels calibrated against Clifford translations") {
    // left translations preserve the left family and the right family; the
    // right-family parameter moves, which pins the labeling
    GaussRat i(Rat(0), Rat(1)), one(Rat(1)), two(Rat(2));
    ProjMap5R L = left_translation(UnitQuatR::i());

    GeneratorLine left_line = generator_line(GeneratorFamily::left, two, one);
    GeneratorClass lc = classify_generator(apply(L, left_line));
    CHECK(lc.family == GeneratorFamily::left);
    // the left parameter is even fixed pointwise by left translations
    CHECK((lc.m0 * one - lc.m1 * two).is_zero());

    GeneratorLine right_line = generator_line(GeneratorFamily::right, two, one);
    GeneratorClass rc = classify_generator(apply(L, right_line));
    CHECK(rc.family == GeneratorFamily::right);
    // but the right parameter moves (mu -> -mu under left translation by i)
    CHECK_FALSE((rc.m0 * one - rc.m1 * two).is_zero());
    CHECK((rc.m0 * one + rc.m1 * two).is_zero());
}

TEST_CASE("family preservation for random translations") {
    SplitMix64 rng(53);
    for (int it = 0; it < 20; ++it) {
        UnitQuatR a = random_unit_quat(rng);
        ProjMap5R L = left_translation(a);
        ProjMap5R R = right_translation(a);
        for (int j = 0; j < 5; ++j) {
            GaussRat mu(rng.small_rat(9), rng.small_rat(9));
            for (GeneratorFamily fam : {GeneratorFamily::left, GeneratorFamily::right}) {
                GeneratorLine line = generator_line(fam, mu, GaussRat(Rat(1)));
                CHECK(classify_generator(apply(L, line)).family == fam);
                CHECK(classify_generator(apply(R, line)).family == fam);
            }
        }
    }
}

TEST_CASE("classify_generator rejects lines off the absolute") {
    GeneratorLine bogus;
    bogus.p = {GaussRat(Rat(1)), GaussRat(Rat(1)), GaussRat(), GaussRat(), GaussRat()};
    bogus.q = {GaussRat(), GaussRat(Rat(1)), GaussRat(Rat(1)), GaussRat(), GaussRat()};
    CHECK_THROWS_AS(classify_generator(bogus), std::invalid_argument);
}

TEST_CASE("stereographic images of circles avoiding the center are circles") {
    SplitMix64 rng(61);
    StereographicD sp;
    int tested = 0;
    for (int it = 0; it < 20 && tested < 10; ++it) {
        UnitQuatR u = random_unit_quat(rng);
        RationalCircleParam c =
            named_circle(CirclePreset::B2).transformed(left_mult_matrix(u.quat()));
        std::vector<Vec3d> img;
        bool usable = true;
        for (int k = 0; k < 16; ++k) {
            QuatD q = c.eval_angle(6.283185307179586 * k / 16);
            if (1 - q.z < 0.05) {
                usable = false;
                break;
            }
            img.push_back(sp(q));
        }
        if (!usable) continue;
        ++tested;
        CHECK(circle_fit_residual(img) < 1e-10);
    }
    CHECK(tested >= 5);
}
