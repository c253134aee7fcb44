#include <doctest.h>

#include <cmath>

#include "anosov/rng.hpp"
#include "anosov/shadowing.hpp"

using namespace anosov;

namespace {

const ToralAutomorphism& cat_map() {
    static const ToralAutomorphism f = make_automorphism({2, 1, 1, 1});
    return f;
}

std::vector<TorusPoint> exact_orbit(const ToralAutomorphism& f, const TorusPoint& x0,
                                    long long window) {
    std::vector<TorusPoint> pts(static_cast<size_t>(2 * window + 1));
    pts[static_cast<size_t>(window)] = x0;
    TorusPoint fwd = x0, bwd = x0;
    for (long long n = 1; n <= window; ++n) {
        fwd = apply(f, fwd);
        bwd = apply_inverse(f, bwd);
        pts[static_cast<size_t>(window + n)] = fwd;
        pts[static_cast<size_t>(window - n)] = bwd;
    }
    return pts;
}

// pseudo-orbit with per-step defect of Euclidean norm <= defect_cap
std::vector<TorusPoint> noisy_orbit(const ToralAutomorphism& f, Rng& rng, long long window,
                                    double defect_cap) {
    std::vector<TorusPoint> pts(static_cast<size_t>(2 * window + 1));
    pts[0] = TorusPoint(rng.uniform(), rng.uniform());
    for (size_t i = 1; i < pts.size(); ++i) {
        const double ang = rng.uniform(0.0, 2 * 3.14159265358979);
        const double r = defect_cap * rng.uniform();
        const TorusPoint img = apply(f, pts[i - 1]);
        pts[i] = TorusPoint(img.x() + r * std::cos(ang), img.y() + r * std::sin(ang));
    }
    return pts;
}

}  // namespace

TEST_CASE("defect: exact orbit has zero defect") {
    const auto& f = cat_map();
    const auto pts = exact_orbit(f, TorusPoint(0.347, 0.729), 10);
    const DefectReport rep = defect(f, pts);
    CHECK(rep.delta == 0.0);  // grid iteration is exact
    for (const auto& e : rep.steps) {
        CHECK(e.dx == 0.0);
        CHECK(e.dy == 0.0);
    }
}

TEST_CASE("defect: uniform noise bound") {
    const auto& f = cat_map();
    Rng rng(3);
    const double cap = 1e-4;
    std::vector<TorusPoint> pts;
    const auto base = exact_orbit(f, TorusPoint(0.11, 0.63), 20);
    for (const auto& p : base) {
        const double ang = rng.uniform(0.0, 2 * 3.14159265358979);
        const double r = cap * rng.uniform();
        pts.emplace_back(p.x() + r * std::cos(ang), p.y() + r * std::sin(ang));
    }
    const DefectReport rep = defect(f, pts);
    CHECK(rep.delta <= (f.op_norm + 1.0) * cap);
    CHECK(rep.delta > 0.0);
}

TEST_CASE("defect: two equal points") {
    const auto& f = cat_map();
    const TorusPoint q(0.3, 0.7);
    const DefectReport rep = defect(f, {q, q});
    CHECK(rep.delta == doctest::Approx(torus_distance(f, apply(f, q), q)).epsilon(1e-15));
}

TEST_CASE("shadow: exact orbit shadows itself") {
    const auto& f = cat_map();
    const auto q = make_pseudo_orbit(f, exact_orbit(f, TorusPoint(0.347, 0.729), 25));
    const ShadowResult res = shadow(f, q);
    CHECK(res.point == q.at(0));  // zero defects, bitwise fixed point of the series
    for (const auto& d : res.deviations) {
        CHECK(d.du == 0.0);
        CHECK(d.ds == 0.0);
    }
    CHECK(verify_shadow(f, q, res.point, res.beta_certified));
    CHECK(verify_shadow(f, q, q.at(0), 0.0));  // any beta >= 0 works on an exact orbit
}

TEST_CASE("shadow: constant pseudo-orbit at the fixed point") {
    const auto& f = cat_map();
    const std::vector<TorusPoint> pts(21, TorusPoint(0, 0));
    const auto q = make_pseudo_orbit(f, pts);
    CHECK(q.delta == 0.0);
    const ShadowResult res = shadow(f, q);
    CHECK(res.point == TorusPoint(0, 0));
}

TEST_CASE("shadow: certified bound for random pseudo-orbits") {
    const auto& f = cat_map();
    Rng rng(5);
    const double delta = 1e-3;
    const double gain = 1.0 / (1.0 - std::fabs(f.lambda_s));
    for (int rep = 0; rep < 20; ++rep) {
        const auto q = make_pseudo_orbit(f, noisy_orbit(f, rng, 50, delta));
        CHECK(q.delta <= delta);
        const ShadowResult res = shadow(f, q);
        CHECK(res.beta_certified <= delta * gain + res.tail_bound + 1e-12);
        CHECK(verify_shadow(f, q, res.point, res.beta_certified));
        // the certified deviations really are an orbit: defects of the
        // accompanying points stay at rounding level
        for (long long n = -q.window; n < q.window; ++n) {
            const TorusPoint xn = offset_point(f, q.at(n), res.deviation(n, q.window).du,
                                               res.deviation(n, q.window).ds);
            const TorusPoint xn1 = offset_point(f, q.at(n + 1), res.deviation(n + 1, q.window).du,
                                                res.deviation(n + 1, q.window).ds);
            CHECK(torus_distance(f, apply(f, xn), xn1) < 1e-12);
            CHECK(torus_distance(f, xn, q.at(n)) <= res.beta_certified);
        }
    }
}

TEST_CASE("verify_shadow: negative control with unstable deviation") {
    const auto& f = cat_map();
    const auto q = make_pseudo_orbit(f, exact_orbit(f, TorusPoint(0.2, 0.45), 10));
    const TorusPoint x = offset_point(f, q.at(0), 0.3, 0.0);
    CHECK_FALSE(verify_shadow(f, q, x, 0.01));
    CHECK_FALSE(verify_shadow_pointwise(f, q, x, 0.01, 10));
    // pointwise exact iteration also rejects immediately-visible deviations
    CHECK(verify_shadow_pointwise(f, q, q.at(0), 1e-12, 10));
}

TEST_CASE("shadow: uniqueness under window truncation shifts") {
    const auto& f = cat_map();
    Rng rng(9);
    const auto pts = noisy_orbit(f, rng, 50, 1e-3);
    const auto q = make_pseudo_orbit(f, pts);
    // sub-window centered at the same index 0
    const std::vector<TorusPoint> sub(pts.begin() + 4, pts.end() - 4);
    const auto q2 = make_pseudo_orbit(f, sub);
    const ShadowResult a = shadow(f, q), b = shadow(f, q2);
    CHECK(torus_distance(f, a.point, b.point) <= 1e-9);
}

TEST_CASE("window-shift semiconjugation") {
    const auto& f = cat_map();
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const auto q = make_pseudo_orbit(f, noisy_orbit(f, rng, 40, 1e-3));
        const auto sq = shift_window(f, q);
        const ShadowResult a = shadow(f, q);
        const ShadowResult b = shadow(f, sq);
        CHECK(torus_distance(f, b.point, apply(f, a.point)) <= a.tail_bound + b.tail_bound + 1e-11);
    }
}

TEST_CASE("errors: window too small and defect too large") {
    const auto& f = cat_map();
    Rng rng(21);
    // large defects push the certified beta past 1/4
    std::vector<TorusPoint> wild;
    for (int i = 0; i < 21; ++i) wild.emplace_back(rng.uniform(), rng.uniform());
    CHECK_THROWS_AS(shadow(f, make_pseudo_orbit(f, wild)), DefectTooLarge);
    // tiny window with visible defects: truncation tail dominates
    const auto base = noisy_orbit(f, rng, 1, 1e-3);
    CHECK_THROWS_AS(shadow(f, make_pseudo_orbit(f, base)), WindowTooSmall);
}

TEST_CASE("empirical expansivity") {
    const auto& f = cat_map();
    Rng rng(31);
    int checked = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const TorusPoint x(rng.uniform(), rng.uniform());
        const TorusPoint y(x.x() + rng.uniform(-1e-4, 1e-4), x.y() + rng.uniform(-1e-4, 1e-4));
        if (torus_distance(f, x, y) < 1e-6) continue;
        ++checked;
        bool separated = false;
        TorusPoint fx = x, fy = y, bx = x, by = y;
        for (int n = 1; n <= 60 && !separated; ++n) {
            fx = apply(f, fx);
            fy = apply(f, fy);
            bx = apply_inverse(f, bx);
            by = apply_inverse(f, by);
            separated = torus_distance(f, fx, fy) > 0.25 || torus_distance(f, bx, by) > 0.25;
        }
        CHECK(separated);
    }
    CHECK(checked > 400);
}

TEST_CASE("expansivity constant policy") {
    CHECK(expansivity_constant(cat_map()) == 0.25);
    CHECK(expansivity_constant(make_automorphism({1, 1, 1, 0})) == 0.25);
}

TEST_CASE("gamma_net: geometry and density") {
    CHECK_THROWS_AS(gamma_net(0.0), Error);
    const DenseNet coarse = gamma_net(0.8);
    CHECK(coarse.points.size() == 1);  // torus diameter sqrt(2)/2 < 0.8

    const DenseNet net = gamma_net(0.25);
    CHECK(net.points.size() == 9);  // 3x3 grid, spacing 1/3 <= 0.25*sqrt(2)

    const auto& f = cat_map();
    for (const auto* n : {&coarse, &net}) {
        double worst = 0.0;
        for (int i = 0; i < 101; ++i) {
            for (int j = 0; j < 101; ++j) {
                const TorusPoint p(i / 101.0, j / 101.0);
                double best = 1.0;
                for (const auto& c : n->points) best = std::min(best, torus_distance(f, p, c));
                worst = std::max(worst, best);
            }
        }
        CHECK(worst <= n->gamma);
    }
}

TEST_CASE("shadowing soundness batch") {
    // 200 random pseudo-orbits, delta = 1e-3, N = 50
    const auto& f = cat_map();
    Rng rng(42);
    int failures = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto q = make_pseudo_orbit(f, noisy_orbit(f, rng, 50, 1e-3));
        const ShadowResult res = shadow(f, q);
        if (!verify_shadow(f, q, res.point, res.beta_certified)) ++failures;
    }
    CHECK(failures == 0);
}
