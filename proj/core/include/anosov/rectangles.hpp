#pragma once

// Product rectangles in global eigen coordinates, with exact endpoints.
//
// A rectangle is {u*v_u + s*v_s : u in u_range, s in s_range} mod Z^2,
// intervals in the exact (v_u, v_s) basis. Endpoints are field values and
// every set operation (membership, intersection, image, boundary) is
// decided exactly; doubles appear only in diameters and display.

#include <optional>
#include <vector>

#include "anosov/local_product.hpp"
#include "anosov/quadfield.hpp"
#include "anosov/torus_model.hpp"

namespace anosov {

/// Per-side closedness; true = closed.
struct SideFlags {
    bool u_lo = true, u_hi = true, s_lo = true, s_hi = true;
};

struct Rectangle {
    QuadInterval u_range, s_range;  // absolute eigen coordinates of one lift
    SideFlags closed;

    QuadVal width_u() const { return u_range.length(); }
    QuadVal width_s() const { return s_range.length(); }
    bool has_interior() const {
        return u_range.lo < u_range.hi && s_range.lo < s_range.hi;
    }
    QuadVec center_eigen() const {
        return {(u_range.lo + u_range.hi).div_rational(2, 1),
                (s_range.lo + s_range.hi).div_rational(2, 1)};
    }
};

/// Finite union of rectangles sharing one chart lift each.
struct BoxComplex {
    std::vector<Rectangle> boxes;
    bool canonical = false;

    bool empty() const { return boxes.empty(); }
    size_t size() const { return boxes.size(); }
};

/// Rectangle centered at a torus point with unit-eigenbasis half-widths.
/// The half-widths are rounded onto the internal dyadic grid once, at
/// construction; all later arithmetic on the endpoints is exact.
Rectangle make_rectangle_centered(const ToralAutomorphism& f, const TorusPoint& center,
                                  double half_u_unit, double half_s_unit,
                                  SideFlags flags = SideFlags{});

Rectangle make_rectangle_eigen(QuadInterval u_range, QuadInterval s_range,
                               SideFlags flags = SideFlags{});

/// Center of the rectangle reduced to the torus.
TorusPoint base_point(const ToralAutomorphism& f, const Rectangle& r);

/// Exact membership of a (dyadic grid) torus point, honoring side flags.
bool contains(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x);
/// Membership in the interior / in the closure, regardless of flags.
bool contains_interior(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x);
bool contains_closure(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x);

/// Eigen coordinates of the lift of x lying in (or nearest to) r's chart,
/// if one exists within half a lattice cell; exact.
std::optional<QuadVec> eigen_in_chart(const ToralAutomorphism& f, const Rectangle& r,
                                      const TorusPoint& x);

/// W^s(x, R): stable slice through x clipped to [-epsilon, epsilon].
/// Throws NotInRectangle unless contains(f, r, x).
FiberSegment stable_fiber(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x,
                          double epsilon);
FiberSegment unstable_fiber(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x,
                            double epsilon);

/// The two u-extreme faces {u = const} x s_range (the stable-direction
/// boundary). A u-degenerate rectangle is its own stable boundary.
BoxComplex stable_boundary(const Rectangle& r);
BoxComplex unstable_boundary(const Rectangle& r);

/// Exact intersection in a common chart; empty complex when disjoint.
/// Throws ChartConflict when the rectangles are too large to have a
/// well-defined common lift (diameter >= 1/4 each is the guard).
BoxComplex intersect_rectangles(const ToralAutomorphism& f, const Rectangle& a,
                                const Rectangle& b);

/// Exact f-image: u-axis scaled by lambda_u, s-axis by lambda_s.
Rectangle image_rectangle(const ToralAutomorphism& f, const Rectangle& r);
Rectangle preimage_rectangle(const ToralAutomorphism& f, const Rectangle& r);

/// Lattice shift L with b's chart near a's chart: eigen coords of b + L
/// land within 1/2 of a's center. Exact value, nullopt if none.
std::optional<QuadVec> chart_shift(const ToralAutomorphism& f, const Rectangle& a,
                                   const Rectangle& b);

/// Translate r by exact eigen offset (chart change).
Rectangle shifted(const Rectangle& r, const QuadVec& eigen_offset);

/// Exact area of the represented point set (Lebesgue measure on T^2).
QuadVal area(const ToralAutomorphism& f, const Rectangle& r);
QuadVal area(const ToralAutomorphism& f, const BoxComplex& c);

/// Euclidean diameter of the point set (double; used for size checks).
double diameter(const ToralAutomorphism& f, const Rectangle& r);

/// Proper iff nonempty interior and all sides closed (closure of interior).
bool is_proper(const Rectangle& r);

/// Sorts deterministically and merges exactly abutting boxes.
void canonicalize(const ToralAutomorphism& f, BoxComplex& c);

/// Exact open-overlap test (positive-area intersection) across charts.
bool interiors_overlap(const ToralAutomorphism& f, const Rectangle& a, const Rectangle& b);

/// Shift moving b into a's chart so the interiors overlap; exact, nullopt
/// when the interiors are disjoint on the torus.
std::optional<QuadVec> open_overlap_shift(const ToralAutomorphism& f, const Rectangle& a,
                                          const Rectangle& b);

/// Like intersect_rectangles but guarded only by diam(a) + diam(b) < 1/2,
/// which still makes the common lift unique; for internal pullback chains.
std::optional<Rectangle> intersect_common_chart(const ToralAutomorphism& f, const Rectangle& a,
                                                const Rectangle& b);

}  // namespace anosov
