#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "anosov/partition.hpp"

namespace anosov {

namespace {

// A crossing of the two segments: the point rho*v_u on the unstable lift
// equals sigma*v_s + L for a lattice vector L; rho is the u eigen
// coordinate of L and sigma is minus its s eigen coordinate.
struct Junction {
    QuadVal rho, sigma;
    long long lx = 0, ly = 0;
};

struct WebGraph {
    std::vector<Junction> verts;
    // neighbor vertex index along each direction: 0:+u 1:+s 2:-u 3:-s, -1 if none
    std::vector<std::array<int, 4>> nbr;
};

std::vector<Junction> enumerate_junctions(const ToralAutomorphism& f, double ru, double rs) {
    const double bound = ru * f.norm_u + rs * f.norm_s + 2.0;
    const auto B = static_cast<long long>(std::ceil(bound));
    std::vector<Junction> out;
    const double u1 = f.r_u.x.to_double(), u2 = f.r_u.y.to_double();
    const double s1 = f.r_s.x.to_double(), s2 = f.r_s.y.to_double();
    const QuadVal qru = QuadVal::from_double(ru), qrs = QuadVal::from_double(rs);
    for (long long lx = -B; lx <= B; ++lx) {
        for (long long ly = -B; ly <= B; ++ly) {
            // double prefilter with a wide margin, then exact
            const double rho_d = u1 * static_cast<double>(lx) + u2 * static_cast<double>(ly);
            const double sig_d = -(s1 * static_cast<double>(lx) + s2 * static_cast<double>(ly));
            if (std::fabs(rho_d) > ru + 1e-6 || std::fabs(sig_d) > rs + 1e-6) continue;
            const QuadVal qlx = QuadVal::integer(lx), qly = QuadVal::integer(ly);
            Junction j;
            j.rho = f.r_u.x * qlx + f.r_u.y * qly;
            j.sigma = -(f.r_s.x * qlx + f.r_s.y * qly);
            j.lx = lx;
            j.ly = ly;
            if (j.rho.abs() > qru || j.sigma.abs() > qrs) continue;
            out.push_back(std::move(j));
        }
    }
    return out;
}

// Smallest parameter >= floor among candidates whose transversal parameter
// is admissible; nullopt when the enumeration did not reach far enough.
// `positive` selects the +end (else the -end, mirrored).
std::optional<QuadVal> pick_termination(const std::vector<Junction>& cands, bool unstable_axis,
                                        bool positive, const QuadVal& floor_param,
                                        const QuadVal& cross_lo, const QuadVal& cross_hi,
                                        bool cross_strict) {
    std::optional<QuadVal> best;
    for (const auto& c : cands) {
        const QuadVal& p = unstable_axis ? c.rho : c.sigma;
        const QuadVal& q = unstable_axis ? c.sigma : c.rho;
        const bool cross_ok = cross_strict ? (q > cross_lo && q < cross_hi)
                                           : (q >= cross_lo && q <= cross_hi);
        if (!cross_ok) continue;
        if (positive) {
            if (p < floor_param) continue;
            if (!best || p < *best) best = p;
        } else {
            if (p > floor_param) continue;
            if (!best || p > *best) best = p;
        }
    }
    return best;
}

// factor * [lo, hi] must stay inside [lo, hi] (|factor| < 1).
bool scaled_inside(const QuadVal& lo, const QuadVal& hi, const QuadVal& factor) {
    QuadVal a = factor * lo, b = factor * hi;
    if (a > b) std::swap(a, b);
    return a >= lo && b <= hi;
}

struct Termination {
    QuadVal u_lo, u_hi, s_lo, s_hi;
};

std::optional<Termination> terminate_segments(const ToralAutomorphism& f,
                                              const std::vector<Junction>& cands, double ru0,
                                              double rs0) {
    const QuadVal qru0 = QuadVal::from_double(ru0);
    const QuadVal qrs0 = QuadVal::from_double(rs0);
    const QuadVal qrs_safe = QuadVal::from_double(rs0 * 0.9);
    const QuadVal bump = QuadVal::rational(1, 1024);

    // Unstable endpoints land on the interior of the rough stable segment.
    auto u_hi = pick_termination(cands, true, true, qru0, -qrs_safe, qrs_safe, false);
    auto u_lo = pick_termination(cands, true, false, -qru0, -qrs_safe, qrs_safe, false);
    if (!u_hi || !u_lo) return std::nullopt;

    // Rebalance until 1/lambda_u * [u_lo, u_hi] sits inside itself (only
    // negative eigenvalues ever need this).
    const QuadVal inv_u = QuadVal::integer(f.det) * f.lam_s;  // 1/lambda_u
    for (int tries = 0; tries < 32 && !scaled_inside(*u_lo, *u_hi, inv_u); ++tries) {
        if (u_hi->abs() < u_lo->abs()) {
            u_hi = pick_termination(cands, true, true, *u_hi + bump, -qrs_safe, qrs_safe, false);
            if (!u_hi) return std::nullopt;
        } else {
            u_lo = pick_termination(cands, true, false, *u_lo - bump, -qrs_safe, qrs_safe, false);
            if (!u_lo) return std::nullopt;
        }
    }
    if (!scaled_inside(*u_lo, *u_hi, inv_u)) return std::nullopt;

    // Stable endpoints land strictly inside the final unstable segment.
    auto s_hi = pick_termination(cands, false, true, qrs0, *u_lo, *u_hi, true);
    auto s_lo = pick_termination(cands, false, false, -qrs0, *u_lo, *u_hi, true);
    if (!s_hi || !s_lo) return std::nullopt;

    for (int tries = 0; tries < 32 && !scaled_inside(*s_lo, *s_hi, f.lam_s); ++tries) {
        if (s_hi->abs() < s_lo->abs()) {
            s_hi = pick_termination(cands, false, true, *s_hi + bump, *u_lo, *u_hi, true);
            if (!s_hi) return std::nullopt;
        } else {
            s_lo = pick_termination(cands, false, false, *s_lo - bump, *u_lo, *u_hi, true);
            if (!s_lo) return std::nullopt;
        }
    }
    if (!scaled_inside(*s_lo, *s_hi, f.lam_s)) return std::nullopt;

    return Termination{*u_lo, *u_hi, *s_lo, *s_hi};
}

WebGraph build_graph(std::vector<Junction> verts) {
    WebGraph g;
    g.verts = std::move(verts);
    const size_t n = g.verts.size();
    g.nbr.assign(n, {-1, -1, -1, -1});

    std::vector<int> by_u(n), by_s(n);
    for (size_t i = 0; i < n; ++i) by_u[i] = by_s[i] = static_cast<int>(i);
    std::sort(by_u.begin(), by_u.end(),
              [&](int a, int b) { return g.verts[a].rho < g.verts[b].rho; });
    std::sort(by_s.begin(), by_s.end(),
              [&](int a, int b) { return g.verts[a].sigma < g.verts[b].sigma; });
    for (size_t i = 0; i + 1 < n; ++i) {
        g.nbr[by_u[i]][0] = by_u[i + 1];
        g.nbr[by_u[i + 1]][2] = by_u[i];
        g.nbr[by_s[i]][1] = by_s[i + 1];
        g.nbr[by_s[i + 1]][3] = by_s[i];
    }
    return g;
}

// Face extraction by half-edge tracing (faces kept on one consistent side);
// the cyclic direction order encodes the plane orientation of the
// (v_u, v_s) frame.
std::optional<std::vector<Rectangle>> extract_faces(const ToralAutomorphism& f, const WebGraph& g) {
    const size_t n = g.verts.size();
    if (n < 4) return std::nullopt;
    const bool righthanded = (f.v_u.x * f.v_s.y - f.v_u.y * f.v_s.x).sign() > 0;
    const std::array<int, 4> ccw = righthanded ? std::array<int, 4>{0, 1, 2, 3}
                                               : std::array<int, 4>{0, 3, 2, 1};
    std::array<int, 4> pos{};
    for (int i = 0; i < 4; ++i) pos[ccw[i]] = i;
    auto rev = [](int d) { return d ^ 2; };
    auto next_dir = [&](int v, int incoming) {
        // first existing direction scanning clockwise from reverse(incoming)
        const int p = pos[rev(incoming)];
        for (int step = 1; step <= 4; ++step) {
            const int d = ccw[(p - step + 8) % 4];
            if (g.nbr[v][d] >= 0) return d;
        }
        return -1;
    };

    std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
    std::vector<Rectangle> faces;
    long long half_edges = 0;
    for (size_t v = 0; v < n; ++v)
        for (int d = 0; d < 4; ++d)
            if (g.nbr[v][d] >= 0) ++half_edges;

    long long traced = 0;
    for (size_t v0 = 0; v0 < n; ++v0) {
        for (int d0 = 0; d0 < 4; ++d0) {
            if (g.nbr[v0][d0] < 0 || used[v0][d0]) continue;
            QuadVal rel_u, rel_s, min_u, max_u, min_s, max_s;
            int corners = 0;
            int v = static_cast<int>(v0), d = d0;
            bool ok = true;
            long long guard = 0;
            do {
                used[v][d] = true;
                ++traced;
                const int w = g.nbr[v][d];
                if (d == 0 || d == 2)
                    rel_u += g.verts[w].rho - g.verts[v].rho;
                else
                    rel_s += g.verts[w].sigma - g.verts[v].sigma;
                min_u = min(min_u, rel_u);
                max_u = max(max_u, rel_u);
                min_s = min(min_s, rel_s);
                max_s = max(max_s, rel_s);
                const int nd = next_dir(w, d);
                if (nd < 0) { ok = false; break; }
                if (nd != d) ++corners;
                v = w;
                d = nd;
                if (++guard > half_edges + 4) { ok = false; break; }
            } while (!(v == static_cast<int>(v0) && d == d0));
            if (!ok) return std::nullopt;
            if (!rel_u.is_zero() || !rel_s.is_zero()) return std::nullopt;
            if (corners != 4) return std::nullopt;  // non-rectangular face
            Rectangle face;  // anchor v0 sits at eigen coords (rho0, 0) on its unstable lift
            face.u_range = {g.verts[v0].rho + min_u, g.verts[v0].rho + max_u};
            face.s_range = {min_s, max_s};
            if (!(face.u_range.lo < face.u_range.hi) || !(face.s_range.lo < face.s_range.hi))
                return std::nullopt;
            faces.push_back(std::move(face));
        }
    }
    if (traced != half_edges) return std::nullopt;
    // Euler characteristic of the torus: V - E + F = 0
    if (static_cast<long long>(n) - half_edges / 2 + static_cast<long long>(faces.size()) != 0)
        return std::nullopt;
    return faces;
}

std::optional<InvariantWeb> try_build(const ToralAutomorphism& f, double param_u, double param_s) {
    const double margin = 1.4;
    auto cands = enumerate_junctions(f, param_u * margin + 1.0, param_s * margin + 1.0);
    auto term = terminate_segments(f, cands, param_u, param_s);
    if (!term) return std::nullopt;

    std::vector<Junction> kept;
    for (auto& c : cands) {
        if (c.rho >= term->u_lo && c.rho <= term->u_hi && c.sigma >= term->s_lo &&
            c.sigma <= term->s_hi)
            kept.push_back(std::move(c));
    }
    WebGraph g = build_graph(std::move(kept));
    auto faces = extract_faces(f, g);
    if (!faces) return std::nullopt;

    InvariantWeb web;
    web.unstable = {term->u_lo, term->u_hi};
    web.stable = {term->s_lo, term->s_hi};
    web.faces = std::move(*faces);

    // exact tiling check: the faces have total area 1
    QuadVal total;
    for (const auto& r : web.faces) total += area(f, r);
    if (total != QuadVal::integer(1)) return std::nullopt;

    for (const auto& r : web.faces)
        web.max_face_diameter = std::max(web.max_face_diameter, diameter(f, r));
    return web;
}

}  // namespace

InvariantWeb build_invariant_web(const ToralAutomorphism& f, double max_diam) {
    if (!(max_diam > 0) || max_diam >= 0.5)
        throw Error("build_invariant_web: max_diam must lie in (0, 1/2)");
    double pu = std::max(1.2, 1.0 / (max_diam * f.norm_u));
    double ps = std::max(1.2, 1.0 / (max_diam * f.norm_s));
    for (int round = 0; round < 40; ++round) {
        if (auto web = try_build(f, pu, ps)) {
            if (web->max_face_diameter <= max_diam) return std::move(*web);
            // grow in proportion to how far the largest face overshoots
            const double ratio = web->max_face_diameter / max_diam;
            const double grow = std::min(1.6, std::max(1.12, ratio * 0.75));
            pu *= grow;
            ps *= grow;
        } else {
            pu *= 1.3;
            ps *= 1.3;
        }
    }
    throw Error("build_invariant_web: could not reach requested diameter");
}

}  // namespace anosov
