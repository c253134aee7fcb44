#include "anosov/local_product.hpp"

#include <cmath>

#include "anosov/shadowing.hpp"

namespace anosov {

namespace {

// Condition factor of the unit eigenbasis (1 when the basis is orthonormal).
double basis_condition(const ToralAutomorphism& f) {
    const double a = f.e_u[0], b = f.e_s[0], c = f.e_u[1], d = f.e_s[1];
    const double t = a * a + b * b + c * c + d * d;
    const double det = std::fabs(a * d - b * c);
    const double smax = std::sqrt((t + std::sqrt(std::max(0.0, t * t - 4 * det * det))) / 2);
    return smax * smax / det;  // sigma_max / sigma_min
}

double shadow_gain(const ToralAutomorphism& f) {
    const double fu = 1.0 / (std::fabs(f.lambda_u) - 1.0);
    const double fs = 1.0 / (1.0 - std::fabs(f.lambda_s));
    return std::max(fu, fs) * basis_condition(f);
}

}  // namespace

ConstantsBudget make_budget(const ToralAutomorphism& f, double beta_target) {
    if (!(beta_target > 0.0)) throw BudgetInfeasible("make_budget: beta_target must be positive");
    ConstantsBudget b;
    b.rho = expansivity_constant(f);
    b.epsilon = 0.99 * b.rho / 4.0;
    const double delta_shadow = (b.epsilon / 2.0) / shadow_gain(f);
    b.delta = std::min(delta_shadow, b.epsilon / 2.0);
    b.beta = beta_target;
    if (!(2.0 * b.beta < std::min(b.epsilon, b.delta / 2.0)))
        throw BudgetInfeasible("make_budget: 2*beta >= min(epsilon, delta/2)");
    const double lam = f.contraction;
    b.alpha = b.beta * (1.0 - lam) / 2.0;
    b.gamma = std::min(b.beta, b.alpha / 2.0) / (1.0 + f.op_norm);
    return b;
}

double max_feasible_beta(const ToralAutomorphism& f) {
    ConstantsBudget probe;
    probe.rho = expansivity_constant(f);
    probe.epsilon = 0.99 * probe.rho / 4.0;
    const double delta_shadow = (probe.epsilon / 2.0) / shadow_gain(f);
    const double delta = std::min(delta_shadow, probe.epsilon / 2.0);
    return 0.99 * std::min(probe.epsilon, delta / 2.0) / 2.0;
}

TorusPoint bracket(const ToralAutomorphism& f, const ConstantsBudget& budget,
                   const TorusPoint& x, const TorusPoint& y) {
    const Displacement d = displacement(f, y, x);  // nearest lift of x - y
    if (d.norm() >= budget.delta) throw TooFar("bracket: dist(x, y) >= delta");
    if (std::fabs(d.du) > budget.epsilon || std::fabs(d.ds) > budget.epsilon)
        throw EpsilonExceeded("bracket: displacement component beyond epsilon");
    if (d.du == 0.0 && d.ds == 0.0) return x;  // [x, x] = x bit-exactly
    return offset_point(f, y, d.du, 0.0);
}

FiberSegment fiber(const TorusPoint& x, FiberDirection direction, double half_width) {
    if (!(half_width >= 0.0) || half_width >= 0.25)
        throw Error("fiber: half_width must lie in [0, 1/4)");
    return FiberSegment{x, direction, -half_width, half_width};
}

}  // namespace anosov
