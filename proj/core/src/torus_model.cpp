#include "anosov/torus_model.hpp"

#include <cmath>
#include <cstdlib>

namespace anosov {

namespace {

constexpr std::uint64_t kGridMod = 1ull << 53;

std::uint64_t mod_grid(__int128 v) {
    __int128 r = v % static_cast<__int128>(kGridMod);
    if (r < 0) r += kGridMod;
    return static_cast<std::uint64_t>(r);
}

// Largest matrix entry magnitude for which (entry * mantissa) fits __int128
// with headroom. 2^53 * 2^60 = 2^113 < 2^126.
constexpr std::int64_t kMaxEntry = 1ll << 60;

}  // namespace

double TorusPoint::quantize(double v) {
    if (!std::isfinite(v)) throw Error("TorusPoint: non-finite coordinate");
    double r = v - std::floor(v);
    if (r >= 1.0) r = 0.0;  // floor rounding at the seam
    auto k = static_cast<std::int64_t>(std::llround(r * kGridScale));
    if (k >= static_cast<std::int64_t>(kGridMod)) k -= kGridMod;
    if (k < 0) k += kGridMod;
    return static_cast<double>(k) / kGridScale;
}

TorusPoint TorusPoint::from_mantissa(std::uint64_t mx, std::uint64_t my) {
    TorusPoint p;
    p.x_ = static_cast<double>(mx % kGridMod) / kGridScale;
    p.y_ = static_cast<double>(my % kGridMod) / kGridScale;
    return p;
}

double Displacement::norm() const { return std::hypot(dx, dy); }

QuadVec ToralAutomorphism::eigen_of(const QuadVec& p) const {
    return {r_u.x * p.x + r_u.y * p.y, r_s.x * p.x + r_s.y * p.y};
}

QuadVec ToralAutomorphism::cartesian_of(const QuadVec& uv) const {
    return {uv.x * v_u.x + uv.y * v_s.x, uv.x * v_u.y + uv.y * v_s.y};
}

QuadVec ToralAutomorphism::eigen_of_point(const TorusPoint& p) const {
    QuadVec lift{QuadVal::from_double(p.x()), QuadVal::from_double(p.y())};
    return eigen_of(lift);
}

ToralAutomorphism make_automorphism(const std::array<std::int64_t, 4>& m) {
    for (auto e : m) {
        if (std::llabs(e) > kMaxEntry) throw Error("make_automorphism: entry too large");
    }
    ToralAutomorphism f;
    f.m = m;
    const std::int64_t a = m[0], b = m[1], c = m[2], d = m[3];
    f.det = a * d - b * c;
    if (f.det != 1 && f.det != -1) throw NotUnimodular("make_automorphism: |det| != 1");
    f.trace = a + d;
    // Real eigenvalue of modulus 1 exists iff det=1,|tr|<=2 or det=-1,tr=0;
    // det=1,|tr|<2 gives complex modulus-1 spectrum. All are rejected.
    if ((f.det == 1 && std::llabs(f.trace) <= 2) || (f.det == -1 && f.trace == 0))
        throw NotHyperbolic("make_automorphism: eigenvalue of modulus 1");
    f.disc = f.trace * f.trace - 4 * f.det;

    // Integer inverse: adj(M)/det.
    f.m_inv = {d, -b, -c, a};
    if (f.det == -1)
        for (auto& e : f.m_inv) e = -e;

    const QuadVal half_tr = QuadVal::rational(f.trace, 2);
    const QuadVal half_rt = QuadVal::make(0, 1, 2, f.disc);
    QuadVal l1 = half_tr + half_rt;  // (tr + sqrt(disc))/2
    QuadVal l2 = half_tr - half_rt;
    if (l1.abs() > l2.abs()) {
        f.lam_u = l1;
        f.lam_s = l2;
    } else {
        f.lam_u = l2;
        f.lam_s = l1;
    }
    f.lambda_u = f.lam_u.to_double();
    f.lambda_s = f.lam_s.to_double();

    // Hyperbolic unimodular 2x2 matrices are never triangular, so b != 0 and
    // (b, lambda - a) is a valid eigenvector for either eigenvalue.
    if (b == 0) throw NotHyperbolic("make_automorphism: triangular matrix");
    const QuadVal qa = QuadVal::integer(a), qb = QuadVal::integer(b);
    f.v_u = {qb, f.lam_u - qa};
    f.v_s = {qb, f.lam_s - qa};
    if (b < 0) {  // first component positive: matches the unit-vector convention
        f.v_u = {-f.v_u.x, -f.v_u.y};
        f.v_s = {-f.v_s.x, -f.v_s.y};
    }

    // Dual rows: [r_u; r_s] = [v_u v_s]^{-1}, computed in the field.
    // det[v_u v_s] = v_u.x*v_s.y - v_u.y*v_s.x.
    const QuadVal det_b = f.v_u.x * f.v_s.y - f.v_u.y * f.v_s.x;
    if (det_b.is_zero()) throw Error("make_automorphism: degenerate eigenbasis");
    // Inverse of [p q; r s] is [s -q; -r p]/det; multiply by det's field inverse.
    // 1/(x + y sqrt(D)) = (x - y sqrt(D)) / (x^2 - y^2 D): build it explicitly.
    const QuadVal conj = QuadVal::make(det_b.num_rat(), -det_b.num_irr(), det_b.den(), f.disc);
    const QuadVal norm2 = det_b * conj;  // rational
    if (!norm2.is_rational() || norm2.is_zero())
        throw Error("make_automorphism: field norm failure");
    const QuadVal inv_det = conj.div_rational(norm2.num_rat(), norm2.den());
    f.r_u = {f.v_s.y * inv_det, -f.v_s.x * inv_det};
    f.r_s = {-f.v_u.y * inv_det, f.v_u.x * inv_det};

    f.norm_u = std::hypot(f.v_u.x.to_double(), f.v_u.y.to_double());
    f.norm_s = std::hypot(f.v_s.x.to_double(), f.v_s.y.to_double());
    f.e_u = {f.v_u.x.to_double() / f.norm_u, f.v_u.y.to_double() / f.norm_u};
    f.e_s = {f.v_s.x.to_double() / f.norm_s, f.v_s.y.to_double() / f.norm_s};

    // Spectral norm via the singular values of an integer matrix.
    const double fa = static_cast<double>(a), fb = static_cast<double>(b),
                 fc = static_cast<double>(c), fd = static_cast<double>(d);
    const double t1 = fa * fa + fb * fb + fc * fc + fd * fd;
    const double dd = fa * fd - fb * fc;
    f.op_norm = std::sqrt((t1 + std::sqrt(std::max(0.0, t1 * t1 - 4 * dd * dd))) / 2);
    f.contraction = std::max(std::fabs(f.lambda_s), 1.0 / std::fabs(f.lambda_u));
    return f;
}

namespace {

TorusPoint apply_matrix(const std::array<std::int64_t, 4>& m, const TorusPoint& p) {
    const auto kx = static_cast<__int128>(p.mantissa_x());
    const auto ky = static_cast<__int128>(p.mantissa_y());
    const std::uint64_t nx = mod_grid(static_cast<__int128>(m[0]) * kx + static_cast<__int128>(m[1]) * ky);
    const std::uint64_t ny = mod_grid(static_cast<__int128>(m[2]) * kx + static_cast<__int128>(m[3]) * ky);
    return TorusPoint::from_mantissa(nx, ny);
}

}  // namespace

TorusPoint apply(const ToralAutomorphism& f, const TorusPoint& p) { return apply_matrix(f.m, p); }

TorusPoint apply_inverse(const ToralAutomorphism& f, const TorusPoint& p) {
    return apply_matrix(f.m_inv, p);
}

TorusPoint apply_iter(const ToralAutomorphism& f, const TorusPoint& p, long long n) {
    TorusPoint q = p;
    if (n >= 0) {
        for (long long i = 0; i < n; ++i) q = apply(f, q);
    } else {
        for (long long i = 0; i < -n; ++i) q = apply_inverse(f, q);
    }
    return q;
}

namespace {

// Reduce a grid-exact difference into [-1/2, 1/2). Exact double arithmetic.
double reduce_half(double d, bool* tie) {
    if (d >= 0.5) {
        if (d == 0.5 && tie) *tie = true;
        d -= 1.0;
    } else if (d < -0.5) {
        d += 1.0;
    }
    if (d == -0.5 && tie) *tie = true;
    return d;
}

Displacement displacement_impl(const ToralAutomorphism& f, const TorusPoint& p,
                               const TorusPoint& q, bool throw_on_tie) {
    bool tie = false;
    Displacement d;
    d.dx = reduce_half(q.x() - p.x(), &tie);
    d.dy = reduce_half(q.y() - p.y(), &tie);
    if (tie && throw_on_tie)
        throw AmbiguousLift("displacement: Cartesian component exactly +-1/2");
    // Solve [e_u e_s] (du, ds)^T = (dx, dy).
    const double a = f.e_u[0], b = f.e_s[0], c = f.e_u[1], dd = f.e_s[1];
    const double det = a * dd - b * c;
    d.du = (d.dx * dd - d.dy * b) / det;
    d.ds = (a * d.dy - c * d.dx) / det;
    return d;
}

}  // namespace

Displacement displacement(const ToralAutomorphism& f, const TorusPoint& p, const TorusPoint& q) {
    return displacement_impl(f, p, q, true);
}

Displacement displacement_allow_ties(const ToralAutomorphism& f, const TorusPoint& p,
                                     const TorusPoint& q) {
    return displacement_impl(f, p, q, false);
}

double torus_distance(const ToralAutomorphism& f, const TorusPoint& p, const TorusPoint& q) {
    return displacement_impl(f, p, q, false).norm();
}

std::pair<double, double> hyperbolicity_constants(const ToralAutomorphism& f) {
    return {1.0, f.contraction};
}

TorusPoint offset_point(const ToralAutomorphism& f, const TorusPoint& p, double du, double ds) {
    return TorusPoint(p.x() + du * f.e_u[0] + ds * f.e_s[0],
                      p.y() + du * f.e_u[1] + ds * f.e_s[1]);
}

TorusPoint point_at_eigen(const ToralAutomorphism& f, const QuadVec& uv) {
    const QuadVec c = f.cartesian_of(uv);
    return TorusPoint(c.x.to_double(), c.y.to_double());
}

}  // namespace anosov
