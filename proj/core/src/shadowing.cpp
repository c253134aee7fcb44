#include "anosov/shadowing.hpp"

#include <algorithm>
#include <cmath>

namespace anosov {

namespace {
constexpr double kAnchorSlack = 1e-13;  // representation accuracy of a grid point
}

PseudoOrbit make_pseudo_orbit(const ToralAutomorphism& f, std::vector<TorusPoint> points) {
    if (points.size() < 3 || points.size() % 2 == 0)
        throw Error("make_pseudo_orbit: need an odd number of points >= 3");
    PseudoOrbit q;
    q.window = static_cast<long long>(points.size() / 2);
    q.points = std::move(points);
    q.delta = defect(f, q.points).delta;
    return q;
}

DefectReport defect(const ToralAutomorphism& f, const std::vector<TorusPoint>& points) {
    if (points.size() < 2) throw Error("defect: need at least 2 points");
    DefectReport rep;
    rep.steps.reserve(points.size() - 1);
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        const Displacement e = displacement(f, apply(f, points[i]), points[i + 1]);
        rep.delta = std::max(rep.delta, e.norm());
        rep.steps.push_back(e);
    }
    return rep;
}

namespace {

// Window-optimal deviations by direct evaluation of the truncated series,
// each component accumulated in its contracting direction.
std::vector<Displacement> optimal_deviations(const ToralAutomorphism& f,
                                             const std::vector<Displacement>& e) {
    const size_t steps = e.size();        // 2N
    const size_t count = steps + 1;       // 2N+1 deviation indices
    std::vector<Displacement> d(count);
    // stable: d^s_{-N} = 0, d^s_{n+1} = lambda_s d^s_n - e^s_n
    double ds = 0.0;
    for (size_t i = 0; i < steps; ++i) {
        ds = f.lambda_s * ds - e[i].ds;
        d[i + 1].ds = ds;
    }
    // unstable: d^u_N = 0, d^u_n = (d^u_{n+1} + e^u_n) / lambda_u
    double du = 0.0;
    for (size_t i = steps; i-- > 0;) {
        du = (du + e[i].du) / f.lambda_u;
        d[i].du = du;
    }
    for (size_t i = 0; i < count; ++i) {
        d[i].dx = d[i].du * f.e_u[0] + d[i].ds * f.e_s[0];
        d[i].dy = d[i].du * f.e_u[1] + d[i].ds * f.e_s[1];
    }
    return d;
}

double max_norm(const std::vector<Displacement>& d) {
    double m = 0.0;
    for (const auto& v : d) m = std::max(m, v.norm());
    return m;
}

double tail_bound_of(const ToralAutomorphism& f, double delta, long long window) {
    const double lam = f.contraction;
    return delta * std::pow(lam, static_cast<double>(window)) / (1.0 - lam);
}

}  // namespace

ShadowResult shadow(const ToralAutomorphism& f, const PseudoOrbit& q) {
    const DefectReport rep = defect(f, q.points);
    ShadowResult res;
    res.deviations = optimal_deviations(f, rep.steps);
    res.tail_bound = tail_bound_of(f, rep.delta, q.window);
    res.beta_certified = max_norm(res.deviations) + res.tail_bound + kAnchorSlack;
    if (res.beta_certified >= 0.25)
        throw DefectTooLarge("shadow: certified beta exceeds 1/4");
    if (res.tail_bound > res.beta_certified / 10.0)
        throw WindowTooSmall("shadow: truncation tail above beta/10");
    const Displacement& d0 = res.deviations[static_cast<size_t>(q.window)];
    res.point = offset_point(f, q.at(0), d0.du, d0.ds);
    return res;
}

bool verify_shadow(const ToralAutomorphism& f, const PseudoOrbit& q, const TorusPoint& x,
                   double beta) {
    if (beta < 0.0) return false;
    const DefectReport rep = defect(f, q.points);
    const auto dev = optimal_deviations(f, rep.steps);

    // (a) anchor: x must be the certified shadow point to representation accuracy
    const Displacement& d0 = dev[static_cast<size_t>(q.window)];
    const TorusPoint anchor = offset_point(f, q.at(0), d0.du, d0.ds);
    if (torus_distance(f, x, anchor) > kAnchorSlack) return false;

    // (b) certified deviations within beta (minus the anchor slack)
    const double slack = std::min(kAnchorSlack, beta / 2.0);
    if (max_norm(dev) > beta - slack) return false;

    // (c) pointwise cross-check by exact iteration over the horizon where the
    // grid representation still decides the inequality.
    const double growth_per_step = std::fabs(f.lambda_u);
    double amplified = kAnchorSlack;
    long long horizon = 0;
    while (horizon < q.window && amplified * growth_per_step < 0.05 * std::max(beta, 1e-12)) {
        amplified *= growth_per_step;
        ++horizon;
    }
    return verify_shadow_pointwise(f, q, x, beta, horizon);
}

bool verify_shadow_pointwise(const ToralAutomorphism& f, const PseudoOrbit& q,
                             const TorusPoint& x, double beta, long long max_n) {
    const long long n_max = std::min(max_n, q.window);
    TorusPoint fwd = x, bwd = x;
    if (torus_distance(f, x, q.at(0)) > beta) return false;
    for (long long n = 1; n <= n_max; ++n) {
        fwd = apply(f, fwd);
        bwd = apply_inverse(f, bwd);
        if (torus_distance(f, fwd, q.at(n)) > beta) return false;
        if (torus_distance(f, bwd, q.at(-n)) > beta) return false;
    }
    return true;
}

DenseNet gamma_net(double gamma) {
    if (!(gamma > 0.0) || gamma >= 1.0)
        throw Error("gamma_net: gamma must lie in (0, 1)");
    const auto k = static_cast<long long>(std::ceil(1.0 / (gamma * std::sqrt(2.0))));
    DenseNet net;
    net.gamma = gamma;
    net.points.reserve(static_cast<size_t>(k * k));
    for (long long i = 0; i < k; ++i)
        for (long long j = 0; j < k; ++j)
            net.points.emplace_back((i + 0.5) / static_cast<double>(k),
                                    (j + 0.5) / static_cast<double>(k));
    return net;
}

double expansivity_constant(const ToralAutomorphism& f) {
    (void)f;
    return 0.25;
}

PseudoOrbit shift_window(const ToralAutomorphism& f, const PseudoOrbit& q) {
    if (q.window < 2) throw WindowTooSmall("shift_window: window too small to shift");
    std::vector<TorusPoint> pts(q.points.begin() + 2, q.points.end());
    return make_pseudo_orbit(f, std::move(pts));
}

}  // namespace anosov
