#include <doctest.h>

#include <cmath>

#include "anosov/rng.hpp"
#include "anosov/torus_model.hpp"

using namespace anosov;

namespace {

const ToralAutomorphism& cat_map() {
    static const ToralAutomorphism f = make_automorphism({2, 1, 1, 1});
    return f;
}

const ToralAutomorphism& fib_map() {
    static const ToralAutomorphism f = make_automorphism({1, 1, 1, 0});
    return f;
}

// roots of t^2 - tr t + det, the independent oracle for the eigenvalues
std::pair<double, double> quadratic_roots(double tr, double det) {
    const double disc = std::sqrt(tr * tr - 4 * det);
    return {(tr + disc) / 2, (tr - disc) / 2};
}

}  // namespace

TEST_CASE("eigenvalues match the characteristic polynomial") {
    const auto [cu, cs] = quadratic_roots(3, 1);
    CHECK(cat_map().lambda_u == doctest::Approx(cu).epsilon(1e-14));
    CHECK(cat_map().lambda_s == doctest::Approx(cs).epsilon(1e-14));
    CHECK(cat_map().lambda_u == doctest::Approx(2.6180339887).epsilon(1e-9));
    CHECK(cat_map().lambda_s == doctest::Approx(0.3819660113).epsilon(1e-9));

    const auto [fu, fs] = quadratic_roots(1, -1);
    CHECK(fib_map().lambda_u == doctest::Approx(fu).epsilon(1e-14));
    CHECK(fib_map().lambda_s == doctest::Approx(fs).epsilon(1e-14));
    CHECK(fib_map().lambda_s < 0.0);  // (1 - sqrt5)/2
}

TEST_CASE("rejections: unimodularity and hyperbolicity") {
    CHECK_THROWS_AS(make_automorphism({1, 0, 0, 1}), NotHyperbolic);   // identity
    CHECK_THROWS_AS(make_automorphism({0, 1, -1, 0}), NotHyperbolic);  // rotation
    CHECK_THROWS_AS(make_automorphism({1, 1, 0, 1}), NotHyperbolic);   // parabolic shear
    CHECK_THROWS_AS(make_automorphism({0, 1, -1, 1}), NotHyperbolic);  // elliptic, |tr|<2
    CHECK_THROWS_AS(make_automorphism({2, 0, 0, 2}), NotUnimodular);
    CHECK_THROWS_AS(make_automorphism({0, 1, 1, 0}), NotHyperbolic);   // det=-1, tr=0
}

TEST_CASE("automorphism invariants") {
    for (const auto* f : {&cat_map(), &fib_map()}) {
        CHECK(std::llabs(f->det) == 1);
        // lambda_u * lambda_s = det, exactly in the field
        CHECK(f->lam_u * f->lam_s == QuadVal::integer(f->det));
        // unit eigenvectors with positive first nonzero component
        CHECK(std::hypot(f->e_u[0], f->e_u[1]) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::hypot(f->e_s[0], f->e_s[1]) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(f->e_u[0] > 0.0);
        CHECK(f->e_s[0] > 0.0);
        // eigen residual M e - lambda e below 1e-12
        for (int which = 0; which < 2; ++which) {
            const auto& e = which ? f->e_s : f->e_u;
            const double lam = which ? f->lambda_s : f->lambda_u;
            const double r1 = f->m[0] * e[0] + f->m[1] * e[1] - lam * e[0];
            const double r2 = f->m[2] * e[0] + f->m[3] * e[1] - lam * e[1];
            CHECK(std::hypot(r1, r2) < 1e-12);
        }
        // dual rows invert the eigenbasis exactly
        CHECK(f->r_u.x * f->v_u.x + f->r_u.y * f->v_u.y == QuadVal::integer(1));
        CHECK((f->r_u.x * f->v_s.x + f->r_u.y * f->v_s.y).is_zero());
        CHECK((f->r_s.x * f->v_u.x + f->r_s.y * f->v_u.y).is_zero());
        CHECK(f->r_s.x * f->v_s.x + f->r_s.y * f->v_s.y == QuadVal::integer(1));
    }
}

TEST_CASE("apply: worked examples") {
    const auto& f = cat_map();
    CHECK(apply(f, TorusPoint(0, 0)) == TorusPoint(0, 0));  // fixed point
    CHECK(apply(f, TorusPoint(0.5, 0.5)) == TorusPoint(0.5, 0.0));
    CHECK(apply(f, TorusPoint(0.25, 0.5)) == TorusPoint(0.0, 0.75));
}

TEST_CASE("apply round trip is exact on the grid") {
    const auto& f = cat_map();
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const TorusPoint p(rng.uniform(), rng.uniform());
        CHECK(apply_inverse(f, apply(f, p)) == p);
        CHECK(apply(f, apply_inverse(f, p)) == p);
    }
    // matrix * inverse = identity
    const auto& m = f.m;
    const auto& mi = f.m_inv;
    CHECK(m[0] * mi[0] + m[1] * mi[2] == 1);
    CHECK(m[0] * mi[1] + m[1] * mi[3] == 0);
    CHECK(m[2] * mi[0] + m[3] * mi[2] == 0);
    CHECK(m[2] * mi[1] + m[3] * mi[3] == 1);
}

TEST_CASE("displacement: worked examples") {
    const auto& f = cat_map();
    SUBCASE("coincident points") {
        const Displacement d = displacement(f, TorusPoint(0.3, 0.4), TorusPoint(0.3, 0.4));
        CHECK(d.du == 0.0);
        CHECK(d.ds == 0.0);
    }
    SUBCASE("point on the unstable line") {
        const TorusPoint p(0, 0);
        const TorusPoint q = offset_point(f, p, 0.01, 0.0);
        const Displacement d = displacement(f, p, q);
        CHECK(d.du == doctest::Approx(0.01).epsilon(1e-12));
        CHECK(std::fabs(d.ds) < 1e-12);
    }
    SUBCASE("wraparound lift decomposed against a hand solve") {
        const TorusPoint p(0.9, 0.9), q(0.1, 0.1);
        const Displacement d = displacement(f, p, q);
        CHECK(d.dx == doctest::Approx(0.2).epsilon(1e-14));
        CHECK(d.dy == doctest::Approx(0.2).epsilon(1e-14));
        // Cramer solve of [e_u e_s] (du, ds) = (0.2, 0.2)
        const double det = f.e_u[0] * f.e_s[1] - f.e_s[0] * f.e_u[1];
        const double du = (0.2 * f.e_s[1] - 0.2 * f.e_s[0]) / det;
        const double ds = (f.e_u[0] * 0.2 - f.e_u[1] * 0.2) / det;
        CHECK(d.du == doctest::Approx(du).epsilon(1e-12));
        CHECK(d.ds == doctest::Approx(ds).epsilon(1e-12));
    }
}

TEST_CASE("displacement: ambiguous lift ties") {
    const auto& f = cat_map();
    CHECK_THROWS_AS(displacement(f, TorusPoint(0, 0), TorusPoint(0.5, 0.25)), AmbiguousLift);
    const Displacement d = displacement_allow_ties(f, TorusPoint(0, 0), TorusPoint(0.5, 0.25));
    CHECK(d.dx == -0.5);  // tie broken toward -1/2
}

TEST_CASE("displacement antisymmetry") {
    const auto& f = cat_map();
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const TorusPoint p(rng.uniform(), rng.uniform()), q(rng.uniform(), rng.uniform());
        const Displacement a = displacement(f, p, q), b = displacement(f, q, p);
        CHECK(a.du == doctest::Approx(-b.du).epsilon(1e-13));
        CHECK(a.ds == doctest::Approx(-b.ds).epsilon(1e-13));
    }
}

TEST_CASE("hyperbolicity constants") {
    const auto [k1, l1] = hyperbolicity_constants(cat_map());
    CHECK(k1 == 1.0);
    CHECK(l1 == doctest::Approx(0.3819660113).epsilon(1e-9));
    const auto [k2, l2] = hyperbolicity_constants(fib_map());
    CHECK(k2 == 1.0);
    CHECK(l2 == doctest::Approx(0.6180339887).epsilon(1e-9));
}

TEST_CASE("one-step contraction along the stable direction") {
    const auto& f = cat_map();
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const TorusPoint x(rng.uniform(), rng.uniform());
        const double ds = rng.uniform(-0.05, 0.05);
        const TorusPoint y = offset_point(f, x, 0.0, ds);
        const double d0 = torus_distance(f, x, y);
        const double d1 = torus_distance(f, apply(f, x), apply(f, y));
        CHECK(d1 == doctest::Approx(std::fabs(f.lambda_s) * d0).epsilon(1e-10));
        const Displacement dd = displacement(f, apply(f, x), apply(f, y));
        CHECK(std::fabs(dd.du) < 1e-12);  // stays purely stable
    }
}

TEST_CASE("exponential convergence on the stable line over 20 steps") {
    // A grid displacement almost exactly along e_s, built from Fibonacci
    // convergents of the stable slope, keeps the unstable component far
    // below quantization-amplification range.
    const std::uint64_t f66 = 27777890035288ull;   // F_66
    const std::uint64_t f67 = 44945570212853ull;   // F_67
    for (const auto* fp : {&cat_map(), &fib_map()}) {
        const auto& f = *fp;
        Rng rng(17);
        for (int rep = 0; rep < 10; ++rep) {
            const TorusPoint x(rng.uniform(), rng.uniform());
            // stable direction of both maps has slope -phi in grid units
            const TorusPoint y = TorusPoint::from_mantissa(x.mantissa_x() + f66,
                                                           x.mantissa_y() - f67);
            const double d0 = torus_distance(f, x, y);
            CHECK(d0 < 0.01);
            CHECK(d0 > 1e-4);
            TorusPoint fx = x, fy = y;
            for (int n = 0; n <= 20; ++n) {
                const double dn = torus_distance(f, fx, fy);
                CHECK(dn <= std::pow(std::fabs(f.lambda_s), n) * d0 + 1e-9);
                CHECK(dn < 0.25);
                fx = apply(f, fx);
                fy = apply(f, fy);
            }
        }
    }
}

TEST_CASE("displacement transforms diagonally under the map") {
    const auto& f = cat_map();
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        const TorusPoint p(rng.uniform(), rng.uniform());
        const TorusPoint q = offset_point(f, p, rng.uniform(-0.01, 0.01),
                                          rng.uniform(-0.01, 0.01));
        const Displacement before = displacement(f, p, q);
        const Displacement after = displacement(f, apply(f, p), apply(f, q));
        CHECK(after.du == doctest::Approx(f.lambda_u * before.du).epsilon(1e-11));
        CHECK(after.ds == doctest::Approx(f.lambda_s * before.ds).epsilon(1e-11));
    }
}

TEST_CASE("exact eigen coordinates of rational points") {
    const auto& f = cat_map();
    const TorusPoint p(0.25, 0.75);
    const QuadVec uv = f.eigen_of_point(p);
    const QuadVec back = f.cartesian_of(uv);
    CHECK(back.x == QuadVal::rational(1, 4));
    CHECK(back.y == QuadVal::rational(3, 4));
}
