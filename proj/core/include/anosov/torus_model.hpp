#pragma once

// Linear hyperbolic automorphisms of the 2-torus.
//
// Torus points are quantized to the dyadic grid k / 2^53, k in [0, 2^53).
// An integer unimodular matrix maps that grid bijectively onto itself, so
// orbits are computed with modular integer arithmetic and are exact: there
// is no rounding anywhere in apply()/apply_inverse(), which is what makes
// long itineraries and expansivity experiments trustworthy.

#include <array>
#include <cstdint>
#include <utility>

#include "anosov/errors.hpp"
#include "anosov/quadfield.hpp"

namespace anosov {

inline constexpr double kGridScale = 9007199254740992.0;  // 2^53

/// Point of T^2 with coordinates in [0, 1), reduced mod 1 and quantized to
/// the 2^-53 grid (so every stored coordinate is an exact dyadic rational).
class TorusPoint {
  public:
    TorusPoint() : x_(0.0), y_(0.0) {}
    TorusPoint(double x, double y) : x_(quantize(x)), y_(quantize(y)) {}

    double x() const { return x_; }
    double y() const { return y_; }

    std::uint64_t mantissa_x() const { return static_cast<std::uint64_t>(x_ * kGridScale); }
    std::uint64_t mantissa_y() const { return static_cast<std::uint64_t>(y_ * kGridScale); }

    static TorusPoint from_mantissa(std::uint64_t mx, std::uint64_t my);

    friend bool operator==(const TorusPoint& p, const TorusPoint& q) {
        return p.x_ == q.x_ && p.y_ == q.y_;
    }

  private:
    static double quantize(double v);
    double x_, y_;
};

/// Nearest-lift difference q - p expressed both as the Cartesian lift
/// (dx, dy), components in [-1/2, 1/2), and in the unit eigenbasis (du, ds).
struct Displacement {
    double du = 0.0, ds = 0.0;  // coordinates along e_u, e_s
    double dx = 0.0, dy = 0.0;  // Cartesian lift

    double norm() const;
};

/// Validated hyperbolic unimodular integer matrix acting on T^2, together
/// with its eigen-splitting in both double and exact field form.
struct ToralAutomorphism {
    std::array<std::int64_t, 4> m;      // row-major [a b; c d]
    std::array<std::int64_t, 4> m_inv;  // exact integer inverse
    std::int64_t det = 0;
    std::int64_t trace = 0;
    std::int64_t disc = 0;  // trace^2 - 4 det, positive non-square

    double lambda_u = 0.0;  // expanding eigenvalue, |lambda_u| > 1
    double lambda_s = 0.0;  // contracting eigenvalue, |lambda_s| < 1
    std::array<double, 2> e_u{}, e_s{};  // unit eigenvectors, first nonzero component > 0

    QuadVal lam_u, lam_s;    // exact eigenvalues
    QuadVec v_u, v_s;        // exact (unnormalized) eigenvectors, same direction as e_u/e_s
    QuadVec r_u, r_s;        // dual rows: eigen coords of p are (r_u . p, r_s . p)
    double norm_u = 0.0, norm_s = 0.0;  // |v_u|, |v_s|

    double op_norm = 0.0;  // spectral norm of the matrix
    double contraction = 0.0;  // max(|lambda_s|, 1/|lambda_u|)

    /// Eigen coordinates (in the exact v_u/v_s basis) of a Cartesian lift.
    QuadVec eigen_of(const QuadVec& p) const;
    /// Cartesian lift of exact eigen coordinates.
    QuadVec cartesian_of(const QuadVec& uv) const;
    /// Exact eigen coordinates of a torus point's canonical lift in [0,1)^2.
    QuadVec eigen_of_point(const TorusPoint& p) const;
};

/// Validates and diagonalizes an integer matrix.
/// Throws NotUnimodular if |det| != 1, NotHyperbolic if some eigenvalue has
/// modulus 1 (for 2x2 unimodular this also excludes complex spectrum).
ToralAutomorphism make_automorphism(const std::array<std::int64_t, 4>& m);

/// f(p) = (matrix * p) mod 1, exact on the dyadic grid.
TorusPoint apply(const ToralAutomorphism& f, const TorusPoint& p);
TorusPoint apply_inverse(const ToralAutomorphism& f, const TorusPoint& p);
TorusPoint apply_iter(const ToralAutomorphism& f, const TorusPoint& p, long long n);

/// Nearest-lift displacement from p to q decomposed in the unit eigenbasis.
/// Throws AmbiguousLift if a Cartesian component of q - p is exactly +-1/2
/// (the canonical reduction breaks the tie toward -1/2; callers that need
/// tie-tolerant behaviour catch and retry with displacement_allow_ties).
Displacement displacement(const ToralAutomorphism& f, const TorusPoint& p, const TorusPoint& q);
Displacement displacement_allow_ties(const ToralAutomorphism& f, const TorusPoint& p,
                                     const TorusPoint& q);

/// Metric realized as the Euclidean norm of the nearest lift.
double torus_distance(const ToralAutomorphism& f, const TorusPoint& p, const TorusPoint& q);

/// (K, lambda) of the Anosov estimates; K = 1 in the adapted eigenbasis and
/// lambda = max(|lambda_s|, 1/|lambda_u|).
std::pair<double, double> hyperbolicity_constants(const ToralAutomorphism& f);

/// p translated by du*e_u + ds*e_s, reduced mod 1 (quantized).
TorusPoint offset_point(const ToralAutomorphism& f, const TorusPoint& p, double du, double ds);

/// Torus point at exact eigen coordinates uv (v-basis), reduced mod 1.
TorusPoint point_at_eigen(const ToralAutomorphism& f, const QuadVec& uv);

}  // namespace anosov
