#pragma once

// Bracket function [x,y] = W^s_eps(x) cap W^u_eps(y) and the validated
// chain of constants rho > epsilon > delta > beta > alpha > gamma.
//
// For a linear map the bracket is one displacement decomposition: with
// (du, ds) the eigen coordinates of the nearest lift of x - y, the unique
// intersection point is z = y (+) du*e_u = x (-) ds*e_s.

#include "anosov/torus_model.hpp"

namespace anosov {

/// The constants chain. Invariants (validated on construction):
///   0 < epsilon <= rho/4,   delta = min(delta_shadow, epsilon/2),
///   2*beta < min(epsilon, delta/2),   gamma < min(beta, alpha/2).
struct ConstantsBudget {
    double rho = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
};

enum class FiberDirection { stable, unstable };

/// Segment {base (+) t*e_dir : t in [lo, hi]} with lo <= 0 <= hi.
struct FiberSegment {
    TorusPoint base;
    FiberDirection direction = FiberDirection::stable;
    double lo = 0.0, hi = 0.0;

    TorusPoint point_at(const ToralAutomorphism& f, double t) const {
        return direction == FiberDirection::stable ? offset_point(f, base, 0.0, t)
                                                   : offset_point(f, base, t, 0.0);
    }
};

/// Budget with beta = beta_target; throws BudgetInfeasible when the chain
/// inequalities cannot hold (for the cat map that caps beta near 4.8e-3).
ConstantsBudget make_budget(const ToralAutomorphism& f, double beta_target);

/// Largest beta_target (up to a 1% safety factor) make_budget accepts.
double max_feasible_beta(const ToralAutomorphism& f);

/// [x, y]; requires torus_distance(x, y) < budget.delta (TooFar otherwise)
/// and both displacement components within budget.epsilon (EpsilonExceeded).
TorusPoint bracket(const ToralAutomorphism& f, const ConstantsBudget& budget,
                   const TorusPoint& x, const TorusPoint& y);

/// Symmetric fiber segment [-h, h] through x; h in [0, 1/4).
FiberSegment fiber(const TorusPoint& x, FiberDirection direction, double half_width);

}  // namespace anosov
