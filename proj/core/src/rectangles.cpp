#include "anosov/rectangles.hpp"

#include <algorithm>
#include <cmath>

namespace anosov {

namespace {

struct Bound {
    QuadVal v;
    bool closed;
};

// max of lower bounds / min of upper bounds with closedness bookkeeping
Bound tighter_lo(const Bound& a, const Bound& b) {
    if (a.v > b.v) return a;
    if (b.v > a.v) return b;
    return {a.v, a.closed && b.closed};
}

Bound tighter_hi(const Bound& a, const Bound& b) {
    if (a.v < b.v) return a;
    if (b.v < a.v) return b;
    return {a.v, a.closed && b.closed};
}

bool interval_empty(const Bound& lo, const Bound& hi) {
    if (lo.v > hi.v) return true;
    if (lo.v == hi.v) return !(lo.closed && hi.closed);
    return false;
}

QuadVal area_factor(const ToralAutomorphism& f) {
    return (f.v_u.x * f.v_s.y - f.v_u.y * f.v_s.x).abs();
}

}  // namespace

Rectangle make_rectangle_centered(const ToralAutomorphism& f, const TorusPoint& center,
                                  double half_u_unit, double half_s_unit, SideFlags flags) {
    if (half_u_unit < 0 || half_s_unit < 0)
        throw Error("make_rectangle_centered: negative half-width");
    const QuadVec c = f.eigen_of_point(center);
    const QuadVal hu = QuadVal::from_double(half_u_unit / f.norm_u);
    const QuadVal hs = QuadVal::from_double(half_s_unit / f.norm_s);
    Rectangle r;
    r.u_range = {c.x - hu, c.x + hu};
    r.s_range = {c.y - hs, c.y + hs};
    r.closed = flags;
    return r;
}

Rectangle make_rectangle_eigen(QuadInterval u_range, QuadInterval s_range, SideFlags flags) {
    if (u_range.lo > u_range.hi || s_range.lo > s_range.hi)
        throw Error("make_rectangle_eigen: inverted interval");
    return Rectangle{std::move(u_range), std::move(s_range), flags};
}

TorusPoint base_point(const ToralAutomorphism& f, const Rectangle& r) {
    return point_at_eigen(f, r.center_eigen());
}

namespace {

// Candidate lattice shifts putting x's lift into r's chart.
std::array<std::array<long long, 2>, 9> lift_candidates(const ToralAutomorphism& f,
                                                        const Rectangle& r, const TorusPoint& x) {
    const QuadVec c = f.cartesian_of(r.center_eigen());
    const double bx = std::round(c.x.to_double() - x.x());
    const double by = std::round(c.y.to_double() - x.y());
    std::array<std::array<long long, 2>, 9> out{};
    int k = 0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            out[k++] = {static_cast<long long>(bx) + dx, static_cast<long long>(by) + dy};
    return out;
}

bool contains_with_flags(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x,
                         const SideFlags& flags, QuadVec* where = nullptr) {
    const QuadVec p = f.eigen_of_point(x);
    for (const auto& L : lift_candidates(f, r, x)) {
        const QuadVec shift =
            f.eigen_of({QuadVal::integer(L[0]), QuadVal::integer(L[1])});
        const QuadVal u = p.x + shift.x;
        const QuadVal s = p.y + shift.y;
        const bool in_u = (flags.u_lo ? u >= r.u_range.lo : u > r.u_range.lo) &&
                          (flags.u_hi ? u <= r.u_range.hi : u < r.u_range.hi);
        const bool in_s = (flags.s_lo ? s >= r.s_range.lo : s > r.s_range.lo) &&
                          (flags.s_hi ? s <= r.s_range.hi : s < r.s_range.hi);
        if (in_u && in_s) {
            if (where) *where = {u, s};
            return true;
        }
    }
    return false;
}

}  // namespace

bool contains(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x) {
    return contains_with_flags(f, r, x, r.closed);
}

bool contains_interior(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x) {
    return contains_with_flags(f, r, x, SideFlags{false, false, false, false});
}

bool contains_closure(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x) {
    return contains_with_flags(f, r, x, SideFlags{true, true, true, true});
}

std::optional<QuadVec> eigen_in_chart(const ToralAutomorphism& f, const Rectangle& r,
                                      const TorusPoint& x) {
    QuadVec where;
    if (contains_with_flags(f, r, x, SideFlags{true, true, true, true}, &where)) return where;
    return std::nullopt;
}

FiberSegment stable_fiber(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x,
                          double epsilon) {
    QuadVec where;
    if (!contains_with_flags(f, r, x, r.closed, &where))
        throw NotInRectangle("stable_fiber: point not in rectangle");
    const double lo = (r.s_range.lo - where.y).to_double() * f.norm_s;
    const double hi = (r.s_range.hi - where.y).to_double() * f.norm_s;
    return FiberSegment{x, FiberDirection::stable, std::max(lo, -epsilon), std::min(hi, epsilon)};
}

FiberSegment unstable_fiber(const ToralAutomorphism& f, const Rectangle& r, const TorusPoint& x,
                            double epsilon) {
    QuadVec where;
    if (!contains_with_flags(f, r, x, r.closed, &where))
        throw NotInRectangle("unstable_fiber: point not in rectangle");
    const double lo = (r.u_range.lo - where.x).to_double() * f.norm_u;
    const double hi = (r.u_range.hi - where.x).to_double() * f.norm_u;
    return FiberSegment{x, FiberDirection::unstable, std::max(lo, -epsilon), std::min(hi, epsilon)};
}

BoxComplex stable_boundary(const Rectangle& r) {
    BoxComplex c;
    if (r.u_range.lo == r.u_range.hi) {
        c.boxes.push_back(r);  // u-degenerate: the whole set is stable boundary
        return c;
    }
    Rectangle lo = r, hi = r;
    lo.u_range = {r.u_range.lo, r.u_range.lo};
    hi.u_range = {r.u_range.hi, r.u_range.hi};
    lo.closed.u_lo = lo.closed.u_hi = true;
    hi.closed.u_lo = hi.closed.u_hi = true;
    c.boxes = {lo, hi};
    return c;
}

BoxComplex unstable_boundary(const Rectangle& r) {
    BoxComplex c;
    if (r.s_range.lo == r.s_range.hi) {
        c.boxes.push_back(r);
        return c;
    }
    Rectangle lo = r, hi = r;
    lo.s_range = {r.s_range.lo, r.s_range.lo};
    hi.s_range = {r.s_range.hi, r.s_range.hi};
    lo.closed.s_lo = lo.closed.s_hi = true;
    hi.closed.s_lo = hi.closed.s_hi = true;
    c.boxes = {lo, hi};
    return c;
}

std::optional<QuadVec> chart_shift(const ToralAutomorphism& f, const Rectangle& a,
                                   const Rectangle& b) {
    const QuadVec ca = f.cartesian_of(a.center_eigen());
    const QuadVec cb = f.cartesian_of(b.center_eigen());
    const double dx = ca.x.to_double() - cb.x.to_double();
    const double dy = ca.y.to_double() - cb.y.to_double();
    if (std::fabs(dx) > 1e15 || std::fabs(dy) > 1e15) return std::nullopt;
    const QuadVec shift = f.eigen_of({QuadVal::from_double(std::round(dx)),
                                      QuadVal::from_double(std::round(dy))});
    return shift;
}

Rectangle shifted(const Rectangle& r, const QuadVec& eigen_offset) {
    Rectangle s = r;
    s.u_range = {r.u_range.lo + eigen_offset.x, r.u_range.hi + eigen_offset.x};
    s.s_range = {r.s_range.lo + eigen_offset.y, r.s_range.hi + eigen_offset.y};
    return s;
}

namespace {

// Intersection of b (moved into a's chart by one of the 9 nearby lattice
// shifts) with a. At most one shift can produce a nonempty result when both
// diameters are below 1/4.
std::optional<Rectangle> intersect_in_chart(const ToralAutomorphism& f, const Rectangle& a,
                                            const Rectangle& b) {
    const QuadVec ca = f.cartesian_of(a.center_eigen());
    const QuadVec cb = f.cartesian_of(b.center_eigen());
    const double rx = std::round(ca.x.to_double() - cb.x.to_double());
    const double ry = std::round(ca.y.to_double() - cb.y.to_double());
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const QuadVec shift = f.eigen_of(
                {QuadVal::from_double(rx + dx), QuadVal::from_double(ry + dy)});
            const Rectangle bs = shifted(b, shift);
            const Bound ulo = tighter_lo({a.u_range.lo, a.closed.u_lo}, {bs.u_range.lo, b.closed.u_lo});
            const Bound uhi = tighter_hi({a.u_range.hi, a.closed.u_hi}, {bs.u_range.hi, b.closed.u_hi});
            const Bound slo = tighter_lo({a.s_range.lo, a.closed.s_lo}, {bs.s_range.lo, b.closed.s_lo});
            const Bound shi = tighter_hi({a.s_range.hi, a.closed.s_hi}, {bs.s_range.hi, b.closed.s_hi});
            if (interval_empty(ulo, uhi) || interval_empty(slo, shi)) continue;
            Rectangle out;
            out.u_range = {ulo.v, uhi.v};
            out.s_range = {slo.v, shi.v};
            out.closed = {ulo.closed, uhi.closed, slo.closed, shi.closed};
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

BoxComplex intersect_rectangles(const ToralAutomorphism& f, const Rectangle& a,
                                const Rectangle& b) {
    if (diameter(f, a) >= 0.25 || diameter(f, b) >= 0.25)
        throw ChartConflict("intersect_rectangles: rectangle too large for a common lift");
    BoxComplex c;
    if (auto r = intersect_in_chart(f, a, b)) c.boxes.push_back(*r);
    return c;
}

Rectangle image_rectangle(const ToralAutomorphism& f, const Rectangle& r) {
    Rectangle out;
    const bool flip_u = f.lam_u.sign() < 0;
    const bool flip_s = f.lam_s.sign() < 0;
    const QuadVal ulo = f.lam_u * r.u_range.lo, uhi = f.lam_u * r.u_range.hi;
    const QuadVal slo = f.lam_s * r.s_range.lo, shi = f.lam_s * r.s_range.hi;
    out.u_range = flip_u ? QuadInterval{uhi, ulo} : QuadInterval{ulo, uhi};
    out.s_range = flip_s ? QuadInterval{shi, slo} : QuadInterval{slo, shi};
    out.closed.u_lo = flip_u ? r.closed.u_hi : r.closed.u_lo;
    out.closed.u_hi = flip_u ? r.closed.u_lo : r.closed.u_hi;
    out.closed.s_lo = flip_s ? r.closed.s_hi : r.closed.s_lo;
    out.closed.s_hi = flip_s ? r.closed.s_lo : r.closed.s_hi;
    return out;
}

Rectangle preimage_rectangle(const ToralAutomorphism& f, const Rectangle& r) {
    // f^{-1} scales the u-axis by 1/lambda_u = det*lambda_s and the s-axis
    // by 1/lambda_s = det*lambda_u; both are exact field values.
    const QuadVal inv_u = QuadVal::integer(f.det) * f.lam_s;
    const QuadVal inv_s = QuadVal::integer(f.det) * f.lam_u;
    Rectangle out;
    const bool flip_u = inv_u.sign() < 0;
    const bool flip_s = inv_s.sign() < 0;
    const QuadVal ulo = inv_u * r.u_range.lo, uhi = inv_u * r.u_range.hi;
    const QuadVal slo = inv_s * r.s_range.lo, shi = inv_s * r.s_range.hi;
    out.u_range = flip_u ? QuadInterval{uhi, ulo} : QuadInterval{ulo, uhi};
    out.s_range = flip_s ? QuadInterval{shi, slo} : QuadInterval{slo, shi};
    out.closed.u_lo = flip_u ? r.closed.u_hi : r.closed.u_lo;
    out.closed.u_hi = flip_u ? r.closed.u_lo : r.closed.u_hi;
    out.closed.s_lo = flip_s ? r.closed.s_hi : r.closed.s_lo;
    out.closed.s_hi = flip_s ? r.closed.s_lo : r.closed.s_hi;
    return out;
}

QuadVal area(const ToralAutomorphism& f, const Rectangle& r) {
    return r.width_u() * r.width_s() * area_factor(f);
}

QuadVal area(const ToralAutomorphism& f, const BoxComplex& c) {
    QuadVal total;
    for (const auto& b : c.boxes) total += area(f, b);
    return total;
}

double diameter(const ToralAutomorphism& f, const Rectangle& r) {
    const double wu = r.width_u().to_double();
    const double ws = r.width_s().to_double();
    const double ax = wu * f.v_u.x.to_double(), ay = wu * f.v_u.y.to_double();
    const double bx = ws * f.v_s.x.to_double(), by = ws * f.v_s.y.to_double();
    return std::max(std::hypot(ax + bx, ay + by), std::hypot(ax - bx, ay - by));
}

bool is_proper(const Rectangle& r) {
    return r.has_interior() && r.closed.u_lo && r.closed.u_hi && r.closed.s_lo && r.closed.s_hi;
}

bool interiors_overlap(const ToralAutomorphism& f, const Rectangle& a, const Rectangle& b) {
    return open_overlap_shift(f, a, b).has_value();
}

std::optional<QuadVec> open_overlap_shift(const ToralAutomorphism& f, const Rectangle& a,
                                          const Rectangle& b) {
    if (!a.has_interior() || !b.has_interior()) return std::nullopt;
    const QuadVec ca = f.cartesian_of(a.center_eigen());
    const QuadVec cb = f.cartesian_of(b.center_eigen());
    const double rx = std::round(ca.x.to_double() - cb.x.to_double());
    const double ry = std::round(ca.y.to_double() - cb.y.to_double());
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const QuadVec shift = f.eigen_of(
                {QuadVal::from_double(rx + dx), QuadVal::from_double(ry + dy)});
            const Rectangle bs = shifted(b, shift);
            if (a.u_range.overlaps_open(bs.u_range) && a.s_range.overlaps_open(bs.s_range))
                return shift;
        }
    }
    return std::nullopt;
}

std::optional<Rectangle> intersect_common_chart(const ToralAutomorphism& f, const Rectangle& a,
                                                const Rectangle& b) {
    if (diameter(f, a) + diameter(f, b) >= 0.5)
        throw ChartConflict("intersect_common_chart: rectangles too large for a unique lift");
    return intersect_in_chart(f, a, b);
}

void canonicalize(const ToralAutomorphism& f, BoxComplex& c) {
    auto key = [&](const Rectangle& r) {
        const TorusPoint b = base_point(f, r);
        return std::tuple<double, double, double, double>(
            b.x(), b.y(), r.width_u().to_double(), r.width_s().to_double());
    };
    std::sort(c.boxes.begin(), c.boxes.end(),
              [&](const Rectangle& a, const Rectangle& b) { return key(a) < key(b); });
    // drop exact duplicates
    c.boxes.erase(std::unique(c.boxes.begin(), c.boxes.end(),
                              [](const Rectangle& a, const Rectangle& b) {
                                  return a.u_range.lo == b.u_range.lo &&
                                         a.u_range.hi == b.u_range.hi &&
                                         a.s_range.lo == b.s_range.lo &&
                                         a.s_range.hi == b.s_range.hi;
                              }),
                  c.boxes.end());
    // merge exactly abutting boxes sharing the transversal range
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i < c.boxes.size() && !merged; ++i) {
            for (size_t j = i + 1; j < c.boxes.size() && !merged; ++j) {
                Rectangle &a = c.boxes[i], &b = c.boxes[j];
                if (a.s_range.lo == b.s_range.lo && a.s_range.hi == b.s_range.hi &&
                    a.u_range.hi == b.u_range.lo && (a.closed.u_hi || b.closed.u_lo)) {
                    a.u_range.hi = b.u_range.hi;
                    a.closed.u_hi = b.closed.u_hi;
                    c.boxes.erase(c.boxes.begin() + static_cast<long>(j));
                    merged = true;
                } else if (a.u_range.lo == b.u_range.lo && a.u_range.hi == b.u_range.hi &&
                           a.s_range.hi == b.s_range.lo && (a.closed.s_hi || b.closed.s_lo)) {
                    a.s_range.hi = b.s_range.hi;
                    a.closed.s_hi = b.closed.s_hi;
                    c.boxes.erase(c.boxes.begin() + static_cast<long>(j));
                    merged = true;
                }
            }
        }
    }
    c.canonical = true;
}

}  // namespace anosov
