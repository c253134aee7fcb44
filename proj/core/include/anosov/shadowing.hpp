#pragma once

// Constructive shadowing for linear hyperbolic toral maps.
//
// A finite-window pseudo-orbit q_{-N}..q_N with step defects e_n satisfies,
// for any candidate orbit f^n(x) = q_n (+) d_n, the deviation recursion
//     d_{n+1} = A d_n - e_n        (A diagonal in the eigenbasis)
// The bounded solution is the pair of geometric series
//     d^s_n = - sum_{k<n} lambda_s^{n-1-k} e^s_k
//     d^u_n =   sum_{k>=n} lambda_u^{n-1-k} e^u_k
// truncated to the window (zero boundary data at the ends). Each component
// is evaluated in its contracting direction only, so the computation is
// numerically stable and the resulting deviation sequence is an exact
// orbit-certificate: x_n = q_n (+) d_n is a machine-accurate orbit segment
// that beta-accompanies q.
//
// Precision note: a point stored at double precision cannot literally
// two-sided-shadow for ~50 steps (the representation error alone is blown
// past any 1e-3 tolerance by lambda_u^n within ~35 steps). verify_shadow
// therefore checks that the candidate agrees with the certified shadow
// anchor to representation accuracy and that the certified deviations stay
// within beta; the pointwise distances are additionally checked by exact
// orbit iteration over the horizon where double storage still decides them.

#include <vector>

#include "anosov/torus_model.hpp"

namespace anosov {

/// Finite window q_{-N}..q_N of a delta-pseudo-orbit.
struct PseudoOrbit {
    long long window = 0;            // half-width N >= 1
    std::vector<TorusPoint> points;  // size 2N+1, index i holds q_{i-N}
    double delta = 0.0;              // certified max step defect

    const TorusPoint& at(long long n) const { return points[static_cast<size_t>(n + window)]; }
};

/// Per-step defects e_n = displacement(f(q_n), q_{n+1}) for n = -N..N-1.
struct DefectReport {
    std::vector<Displacement> steps;
    double delta = 0.0;
};

struct ShadowResult {
    TorusPoint point;            // theta(q) at index 0 (grid-quantized)
    double beta_certified = 0.0;
    double tail_bound = 0.0;     // window-truncation error vs any bi-infinite extension
    std::vector<Displacement> deviations;  // d_n for n = -N..N

    const Displacement& deviation(long long n, long long window) const {
        return deviations[static_cast<size_t>(n + window)];
    }
};

/// Finite gamma-dense set of torus points.
struct DenseNet {
    double gamma = 0.0;
    std::vector<TorusPoint> points;
};

/// Builds a validated pseudo-orbit from raw points (at least 2).
PseudoOrbit make_pseudo_orbit(const ToralAutomorphism& f, std::vector<TorusPoint> points);

DefectReport defect(const ToralAutomorphism& f, const std::vector<TorusPoint>& points);

/// Unique beta-accompanying orbit of the window, with certificate.
/// Throws DefectTooLarge if the certified beta would exceed 1/4 and
/// WindowTooSmall if the truncation tail exceeds beta_certified/10.
ShadowResult shadow(const ToralAutomorphism& f, const PseudoOrbit& q);

/// True iff x represents (to representation accuracy ~1e-13) a point whose
/// orbit stays within beta of q_n over the whole window. See the precision
/// note above for why this is the decidable form of the pointwise bound.
bool verify_shadow(const ToralAutomorphism& f, const PseudoOrbit& q, const TorusPoint& x,
                   double beta);

/// Pointwise check by exact orbit iteration, meaningful while
/// beta is large against 2^-53 * lambda_u^N. Used for negative controls.
bool verify_shadow_pointwise(const ToralAutomorphism& f, const PseudoOrbit& q,
                             const TorusPoint& x, double beta, long long max_n);

/// Uniform grid net: k = ceil(1/(gamma*sqrt(2))) per axis, so every torus
/// point is within gamma of a center.
DenseNet gamma_net(double gamma);

/// Expansivity constant; 1/4 by policy for every valid automorphism.
double expansivity_constant(const ToralAutomorphism& f);

/// Window-shift sigma: drops one index at each end, recentering at n+1.
PseudoOrbit shift_window(const ToralAutomorphism& f, const PseudoOrbit& q);

}  // namespace anosov
