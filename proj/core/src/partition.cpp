#include "anosov/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "anosov/rng.hpp"

namespace anosov {

namespace {

double center_gap(const ToralAutomorphism& f, const TorusPoint& a, const TorusPoint& b) {
    return torus_distance(f, a, b);
}

}  // namespace

ConstantsBudget geometric_budget(const ToralAutomorphism& f, double beta) {
    if (!(beta > 0.0)) throw BudgetInfeasible("geometric_budget: beta must be positive");
    if (beta > max_pipeline_beta(f))
        throw BudgetInfeasible("geometric_budget: beta beyond the unique-lift cap");
    ConstantsBudget b;
    b.rho = expansivity_constant(f);
    b.beta = beta;
    b.delta = std::min(0.249, 4.0 * beta);    // cells keep diameter < delta
    b.epsilon = std::min(0.249, 3.0 * beta);  // cell fibers are never epsilon-truncated
    const double lam = f.contraction;
    b.alpha = beta * (1.0 - lam) / 2.0;
    b.gamma = std::min(b.beta, b.alpha / 2.0) / (1.0 + f.op_norm);
    return b;
}

double max_pipeline_beta(const ToralAutomorphism& f) {
    // image cell diameter |lambda_u|*2b plus target diameter 2b must stay
    // below 1/2 so that common lifts remain unique
    return 0.98 / (4.0 * (1.0 + std::fabs(f.lambda_u)));
}

Cover build_cover(const ToralAutomorphism& f, const ConstantsBudget& budget) {
    const double target = 2.0 * budget.beta * 0.999;
    InvariantWeb web = build_invariant_web(f, target);
    Cover cover;
    cover.rects = std::move(web.faces);
    cover.net.gamma = web.max_face_diameter / 2.0 + 1e-12;
    cover.net.points.reserve(cover.rects.size());
    for (const auto& r : cover.rects) cover.net.points.push_back(base_point(f, r));
    validate_cover(f, cover, budget.beta);
    return cover;
}

Cover make_grid_cover(const ToralAutomorphism& f, double half_width_unit, long long k) {
    if (k < 1) throw Error("make_grid_cover: k must be >= 1");
    Cover cover;
    cover.net.gamma = std::sqrt(2.0) / (2.0 * static_cast<double>(k));
    for (long long i = 0; i < k; ++i) {
        for (long long j = 0; j < k; ++j) {
            const TorusPoint c((i + 0.5) / static_cast<double>(k),
                               (j + 0.5) / static_cast<double>(k));
            cover.net.points.push_back(c);
            cover.rects.push_back(make_rectangle_centered(f, c, half_width_unit, half_width_unit));
        }
    }
    const int probe = 96;
    for (int i = 0; i < probe; ++i) {
        for (int j = 0; j < probe; ++j) {
            const TorusPoint p((i + 0.31) / probe, (j + 0.47) / probe);
            bool covered = false;
            for (const auto& r : cover.rects) {
                if (contains_closure(f, r, p)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) throw CoverageGap("make_grid_cover: probe point uncovered");
        }
    }
    return cover;
}

namespace {

bool interiors_disjoint_cover(const ToralAutomorphism& f, const Cover& cover) {
    std::vector<TorusPoint> centers;
    std::vector<double> diams;
    for (const auto& r : cover.rects) {
        centers.push_back(base_point(f, r));
        diams.push_back(diameter(f, r));
    }
    for (size_t i = 0; i < cover.rects.size(); ++i) {
        for (size_t j = i + 1; j < cover.rects.size(); ++j) {
            if (center_gap(f, centers[i], centers[j]) > (diams[i] + diams[j]) / 2 + 1e-9)
                continue;
            if (interiors_overlap(f, cover.rects[i], cover.rects[j])) return false;
        }
    }
    return true;
}

}  // namespace

void validate_cover(const ToralAutomorphism& f, const Cover& cover, double beta) {
    if (cover.rects.empty()) throw CoverageGap("validate_cover: empty cover");
    const double cap = 2.0 * beta * (1.0 + 1e-12);
    for (const auto& r : cover.rects)
        if (diameter(f, r) > cap) throw Error("validate_cover: rectangle beyond 2*beta");
    if (interiors_disjoint_cover(f, cover)) {
        QuadVal total;
        for (const auto& r : cover.rects) total += area(f, r);
        if (total != QuadVal::integer(1))
            throw CoverageGap("validate_cover: disjoint cover with total area != 1");
    }
}

CoverCheckReport cover_markov_check(const ToralAutomorphism& f, const Cover& cover,
                                    long long samples, std::uint64_t seed) {
    CoverCheckReport rep;
    rep.samples = samples;
    Rng rng(seed);
    std::vector<TorusPoint> centers;
    std::vector<double> diams;
    for (const auto& r : cover.rects) {
        centers.push_back(base_point(f, r));
        diams.push_back(diameter(f, r));
    }
    for (long long it = 0; it < samples; ++it) {
        const TorusPoint x(rng.uniform(), rng.uniform());
        const TorusPoint fx = apply(f, x);
        for (size_t s = 0; s < cover.rects.size(); ++s) {
            if (center_gap(f, centers[s], x) > diams[s] / 2 + 1e-9) continue;
            const auto sx = eigen_in_chart(f, cover.rects[s], x);
            if (!sx || !contains(f, cover.rects[s], x)) continue;
            for (size_t t = 0; t < cover.rects.size(); ++t) {
                if (center_gap(f, centers[t], fx) > diams[t] / 2 + 1e-9) continue;
                const auto tx = eigen_in_chart(f, cover.rects[t], fx);
                if (!tx || !contains(f, cover.rects[t], fx)) {
                    ++rep.skipped;
                    continue;
                }
                ++rep.pairs_checked;
                const QuadVal off_s = tx->y - f.lam_s * sx->y;
                QuadVal a = f.lam_s * cover.rects[s].s_range.lo + off_s;
                QuadVal b = f.lam_s * cover.rects[s].s_range.hi + off_s;
                if (a > b) std::swap(a, b);
                const bool stable_ok =
                    a >= cover.rects[t].s_range.lo && b <= cover.rects[t].s_range.hi;
                const QuadVal off_u = tx->x - f.lam_u * sx->x;
                QuadVal c = f.lam_u * cover.rects[s].u_range.lo + off_u;
                QuadVal d = f.lam_u * cover.rects[s].u_range.hi + off_u;
                if (c > d) std::swap(c, d);
                const bool unstable_ok =
                    c <= cover.rects[t].u_range.lo && d >= cover.rects[t].u_range.hi;
                if (!stable_ok || !unstable_ok) ++rep.violations;
            }
        }
    }
    return rep;
}

namespace {

struct KLift {
    bool interacts = false;
    QuadInterval u, s;  // T_k's ranges expressed in T_j's chart
};

// T_k's unique lift whose closure meets T_j's closure, if any.
KLift k_in_chart_of_j(const ToralAutomorphism& f, const Rectangle& tj, const Rectangle& tk) {
    const QuadVec cj = f.cartesian_of(tj.center_eigen());
    const QuadVec ck = f.cartesian_of(tk.center_eigen());
    const double rx = std::round(cj.x.to_double() - ck.x.to_double());
    const double ry = std::round(cj.y.to_double() - ck.y.to_double());
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const QuadVec shift =
                f.eigen_of({QuadVal::from_double(rx + dx), QuadVal::from_double(ry + dy)});
            const QuadInterval u{tk.u_range.lo + shift.x, tk.u_range.hi + shift.x};
            const QuadInterval s{tk.s_range.lo + shift.y, tk.s_range.hi + shift.y};
            if (u.overlaps_closed(tj.u_range) && s.overlaps_closed(tj.s_range))
                return {true, u, s};
        }
    }
    return {};
}

}  // namespace

std::vector<std::pair<RefinedCellIndex, BoxComplex>> refine_cells(const ToralAutomorphism& f,
                                                                  const Cover& cover) {
    std::vector<std::pair<RefinedCellIndex, BoxComplex>> out;
    const size_t m = cover.rects.size();
    for (size_t j = 0; j < m; ++j) {
        const Rectangle& tj = cover.rects[j];
        for (size_t k = 0; k < m; ++k) {
            const KLift kl = k_in_chart_of_j(f, tj, cover.rects[k]);
            if (!kl.interacts) {
                BoxComplex whole;
                whole.boxes.push_back(tj);
                out.emplace_back(RefinedCellIndex{j, k, 4}, std::move(whole));
                continue;
            }
            const QuadInterval au = intersect(tj.u_range, kl.u);
            const QuadInterval as = intersect(tj.s_range, kl.s);

            auto piece = [](const QuadInterval& u, bool ulo, bool uhi, const QuadInterval& s,
                            bool slo, bool shi) {
                Rectangle r;
                r.u_range = u;
                r.s_range = s;
                r.closed = {ulo, uhi, slo, shi};
                return r;
            };
            // complements U_j \ U' and S_j \ S' as up to two half-open pieces
            struct Piece {
                QuadInterval iv;
                bool lo_closed, hi_closed;
            };
            std::vector<Piece> u_out, s_out;
            if (tj.u_range.lo < au.lo)
                u_out.push_back({{tj.u_range.lo, au.lo}, true, false});
            if (au.hi < tj.u_range.hi)
                u_out.push_back({{au.hi, tj.u_range.hi}, false, true});
            if (tj.s_range.lo < as.lo)
                s_out.push_back({{tj.s_range.lo, as.lo}, true, false});
            if (as.hi < tj.s_range.hi)
                s_out.push_back({{as.hi, tj.s_range.hi}, false, true});

            BoxComplex c1, c2, c3, c4;
            c1.boxes.push_back(piece(au, true, true, as, true, true));
            for (const auto& u : u_out)
                c2.boxes.push_back(piece(u.iv, u.lo_closed, u.hi_closed, as, true, true));
            for (const auto& s : s_out)
                c3.boxes.push_back(piece(au, true, true, s.iv, s.lo_closed, s.hi_closed));
            for (const auto& u : u_out)
                for (const auto& s : s_out)
                    c4.boxes.push_back(
                        piece(u.iv, u.lo_closed, u.hi_closed, s.iv, s.lo_closed, s.hi_closed));

            if (!c1.empty()) out.emplace_back(RefinedCellIndex{j, k, 1}, std::move(c1));
            if (!c2.empty()) out.emplace_back(RefinedCellIndex{j, k, 2}, std::move(c2));
            if (!c3.empty()) out.emplace_back(RefinedCellIndex{j, k, 3}, std::move(c3));
            if (!c4.empty()) out.emplace_back(RefinedCellIndex{j, k, 4}, std::move(c4));
        }
    }
    return out;
}

namespace {

// Exact set equality of two rectangles as torus sets.
bool same_torus_set(const ToralAutomorphism& f, const Rectangle& a, const Rectangle& b) {
    if (a.width_u() != b.width_u() || a.width_s() != b.width_s()) return false;
    const QuadVec ca = f.cartesian_of(a.center_eigen());
    const QuadVec cb = f.cartesian_of(b.center_eigen());
    const double rx = ca.x.to_double() - cb.x.to_double();
    const double ry = ca.y.to_double() - cb.y.to_double();
    if (std::fabs(rx - std::round(rx)) > 1e-6 || std::fabs(ry - std::round(ry)) > 1e-6)
        return false;
    const QuadVec shift = f.eigen_of(
        {QuadVal::from_double(std::round(rx)), QuadVal::from_double(std::round(ry))});
    return b.u_range.lo + shift.x == a.u_range.lo && b.s_range.lo + shift.y == a.s_range.lo;
}

// Deduplicating accumulator: buckets cells by rounded center/width doubles,
// confirms duplicates exactly.
class CellSet {
  public:
    explicit CellSet(const ToralAutomorphism& f) : f_(f) {}

    bool insert(Rectangle cell, std::string prov, MarkovPartition& part) {
        const TorusPoint c = base_point(f_, cell);
        const std::array<long long, 4> key{llround_key(c.x()), llround_key(c.y()),
                                           llround_key(cell.width_u().to_double()),
                                           llround_key(cell.width_s().to_double())};
        // a duplicate computed through another chart may sit in a bucket one
        // step away in any coordinate
        std::array<long long, 4> probe{};
        for (int d0 = -1; d0 <= 1; ++d0)
            for (int d1 = -1; d1 <= 1; ++d1)
                for (int d2 = -1; d2 <= 1; ++d2)
                    for (int d3 = -1; d3 <= 1; ++d3) {
                        probe = {key[0] + d0, key[1] + d1, key[2] + d2, key[3] + d3};
                        const auto it = buckets_.find(probe);
                        if (it == buckets_.end()) continue;
                        for (const size_t idx : it->second)
                            if (same_torus_set(f_, part.cells[idx], cell)) return false;
                    }
        buckets_[key].push_back(part.cells.size());
        part.cells.push_back(std::move(cell));
        part.provenance.push_back(std::move(prov));
        return true;
    }

  private:
    static long long llround_key(double v) { return std::llround(v * 4096.0); }
    const ToralAutomorphism& f_;
    std::map<std::array<long long, 4>, std::vector<size_t>> buckets_;
};

}  // namespace

MarkovPartition build_partition(const ToralAutomorphism& f, const Cover& cover) {
    MarkovPartition part;
    CellSet dedupe(f);

    if (interiors_disjoint_cover(f, cover)) {
        // Interiors already pairwise disjoint: the partition is the set of
        // closures of the interiors, deduplicated.
        for (size_t j = 0; j < cover.rects.size(); ++j) {
            Rectangle cell = cover.rects[j];
            if (!cell.has_interior()) {
                ++part.degenerate_dropped;
                continue;
            }
            cell.closed = SideFlags{true, true, true, true};
            dedupe.insert(std::move(cell), "cover:" + std::to_string(j), part);
        }
    } else {
        // Arrangement of all refinement cut-points, chart by chart.
        for (size_t j = 0; j < cover.rects.size(); ++j) {
            const Rectangle& tj = cover.rects[j];
            std::vector<QuadVal> ucuts{tj.u_range.lo, tj.u_range.hi};
            std::vector<QuadVal> scuts{tj.s_range.lo, tj.s_range.hi};
            for (size_t k = 0; k < cover.rects.size(); ++k) {
                if (k == j) continue;
                const KLift kl = k_in_chart_of_j(f, tj, cover.rects[k]);
                if (!kl.interacts) continue;
                for (const QuadVal& v : {kl.u.lo, kl.u.hi})
                    if (v > tj.u_range.lo && v < tj.u_range.hi) ucuts.push_back(v);
                for (const QuadVal& v : {kl.s.lo, kl.s.hi})
                    if (v > tj.s_range.lo && v < tj.s_range.hi) scuts.push_back(v);
            }
            std::sort(ucuts.begin(), ucuts.end());
            ucuts.erase(std::unique(ucuts.begin(), ucuts.end()), ucuts.end());
            std::sort(scuts.begin(), scuts.end());
            scuts.erase(std::unique(scuts.begin(), scuts.end()), scuts.end());

            for (size_t a = 0; a + 1 < ucuts.size(); ++a) {
                for (size_t b = 0; b + 1 < scuts.size(); ++b) {
                    Rectangle cell;
                    cell.u_range = {ucuts[a], ucuts[a + 1]};
                    cell.s_range = {scuts[b], scuts[b + 1]};
                    if (!cell.has_interior()) {
                        ++part.degenerate_dropped;
                        continue;
                    }
                    std::ostringstream prov;
                    prov << "chart:" << j << " u:" << a << " s:" << b;
                    dedupe.insert(std::move(cell), prov.str(), part);
                }
            }
        }
    }

    for (const auto& c : part.cells) part.diameter = std::max(part.diameter, diameter(f, c));
    validate_partition(f, part);
    return part;
}

void validate_partition(const ToralAutomorphism& f, const MarkovPartition& partition) {
    if (partition.cells.empty()) throw Error("validate_partition: no cells");
    QuadVal total;
    for (const auto& c : partition.cells) {
        if (!is_proper(c)) throw Error("validate_partition: cell not proper");
        total += area(f, c);
    }
    if (total != QuadVal::integer(1))
        throw Error("validate_partition: cell areas do not sum to 1 exactly");
    std::vector<TorusPoint> centers;
    std::vector<double> diams;
    for (const auto& c : partition.cells) {
        centers.push_back(base_point(f, c));
        diams.push_back(diameter(f, c));
    }
    for (size_t i = 0; i < partition.cells.size(); ++i) {
        for (size_t j = i + 1; j < partition.cells.size(); ++j) {
            if (center_gap(f, centers[i], centers[j]) > (diams[i] + diams[j]) / 2 + 1e-9)
                continue;
            if (interiors_overlap(f, partition.cells[i], partition.cells[j]))
                throw Error("validate_partition: interior overlap between cells");
        }
    }
}

namespace {

struct Face {
    QuadVal fixed;       // constant coordinate (u for stable faces, s for unstable)
    QuadInterval range;  // varying coordinate range
    double fixed_d = 0, lo_d = 0, hi_d = 0;
    double cx = 0, cy = 0;  // Cartesian lift of the (fixed, range.lo) corner
};

Face make_face(const ToralAutomorphism& f, bool stable, const QuadVal& fixed,
               const QuadInterval& range) {
    Face fc;
    fc.fixed = fixed;
    fc.range = range;
    fc.fixed_d = fixed.to_double();
    fc.lo_d = range.lo.to_double();
    fc.hi_d = range.hi.to_double();
    const QuadVec corner = stable ? QuadVec{fixed, range.lo} : QuadVec{range.lo, fixed};
    const QuadVec cart = f.cartesian_of(corner);
    fc.cx = cart.x.to_double();
    fc.cy = cart.y.to_double();
    return fc;
}

// 1D exact interval-union coverage of [target.lo, target.hi].
bool intervals_cover(std::vector<QuadInterval> pieces, const QuadInterval& target) {
    if (target.lo >= target.hi) return true;
    std::sort(pieces.begin(), pieces.end(),
              [](const QuadInterval& a, const QuadInterval& b) { return a.lo < b.lo; });
    QuadVal reach = target.lo;
    for (const auto& p : pieces) {
        if (p.lo > reach) return false;
        reach = max(reach, p.hi);
        if (reach >= target.hi) return true;
    }
    return reach >= target.hi;
}

// Is the axis segment `target` (at constant coordinate target.fixed) covered
// by the union of same-axis faces? Candidate faces are aligned with a
// double prefilter, then confirmed and accumulated exactly.
bool face_covered(const ToralAutomorphism& f, const Face& target, bool stable_axis,
                  const std::vector<Face>& family) {
    // double eigen rows for the prefilter
    const double ru1 = f.r_u.x.to_double(), ru2 = f.r_u.y.to_double();
    const double rs1 = f.r_s.x.to_double(), rs2 = f.r_s.y.to_double();
    std::vector<QuadInterval> pieces;
    for (const auto& g : family) {
        const double rx = std::round(target.cx - g.cx);
        const double ry = std::round(target.cy - g.cy);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                const double lx = rx + dx, ly = ry + dy;
                const double sh_fix = stable_axis ? ru1 * lx + ru2 * ly : rs1 * lx + rs2 * ly;
                const double sh_run = stable_axis ? rs1 * lx + rs2 * ly : ru1 * lx + ru2 * ly;
                if (std::fabs(g.fixed_d + sh_fix - target.fixed_d) > 1e-9) continue;
                if (g.lo_d + sh_run > target.hi_d + 1e-9 ||
                    g.hi_d + sh_run < target.lo_d - 1e-9)
                    continue;
                const QuadVec sh = f.eigen_of(
                    {QuadVal::from_double(lx), QuadVal::from_double(ly)});
                const QuadVal sfix = stable_axis ? sh.x : sh.y;
                const QuadVal srun = stable_axis ? sh.y : sh.x;
                if (g.fixed + sfix != target.fixed) continue;
                pieces.push_back({g.range.lo + srun, g.range.hi + srun});
            }
        }
    }
    return intervals_cover(std::move(pieces), target.range);
}

}  // namespace

MarkovReport verify_markov(const ToralAutomorphism& f, const MarkovPartition& partition,
                           long long samples_per_pair, std::uint64_t seed) {
    MarkovReport rep;
    Rng rng(seed);
    const auto& cells = partition.cells;
    const size_t m = cells.size();

    std::vector<Rectangle> images;
    images.reserve(m);
    for (const auto& c : cells) images.push_back(image_rectangle(f, c));

    std::vector<TorusPoint> img_centers, centers;
    std::vector<double> img_diams, diams;
    for (size_t i = 0; i < m; ++i) {
        img_centers.push_back(base_point(f, images[i]));
        img_diams.push_back(diameter(f, images[i]));
        centers.push_back(base_point(f, cells[i]));
        diams.push_back(diameter(f, cells[i]));
    }

    const QuadVal inv_u = QuadVal::integer(f.det) * f.lam_s;  // 1/lambda_u
    const QuadVal inv_s = QuadVal::integer(f.det) * f.lam_u;  // 1/lambda_s

    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (center_gap(f, img_centers[i], centers[j]) > (img_diams[i] + diams[j]) / 2 + 1e-9)
                continue;
            const auto shift = open_overlap_shift(f, images[i], cells[j]);
            if (!shift) continue;
            ++rep.admissible_pairs;
            const Rectangle tj = shifted(cells[j], *shift);
            const bool stable_ok = images[i].s_range.subset_of(tj.s_range);
            const bool unstable_ok = tj.u_range.subset_of(images[i].u_range);
            if (!stable_ok || !unstable_ok) {
                ++rep.pair_violations;
                if (rep.notes.size() < 8) {
                    std::ostringstream os;
                    os << "pair (" << i << "," << j << "):"
                       << (stable_ok ? "" : " stable-fiber inclusion fails")
                       << (unstable_ok ? "" : " unstable-fiber inclusion fails");
                    rep.notes.push_back(os.str());
                }
            }

            // Sampled points of int R_i with f(x) in int R_j; the first two
            // picks hug opposite corners of the overlap (boundary-adjacent).
            const QuadInterval ou = intersect(images[i].u_range, tj.u_range);
            const QuadInterval os_ = intersect(images[i].s_range, tj.s_range);
            const double ulo = ou.lo.to_double(), uhi = ou.hi.to_double();
            const double slo = os_.lo.to_double(), shi = os_.hi.to_double();
            for (long long t = 0; t < samples_per_pair; ++t) {
                double fu, fs;
                if (t == 0) {
                    fu = ulo + (uhi - ulo) * 1e-7;
                    fs = slo + (shi - slo) * 1e-7;
                } else if (t == 1) {
                    fu = uhi - (uhi - ulo) * 1e-7;
                    fs = shi - (shi - slo) * 1e-7;
                } else {
                    fu = rng.uniform(ulo + (uhi - ulo) * 1e-6, uhi - (uhi - ulo) * 1e-6);
                    fs = rng.uniform(slo + (shi - slo) * 1e-6, shi - (shi - slo) * 1e-6);
                }
                const QuadVal pu = inv_u * QuadVal::from_double(fu);
                const QuadVal ps = inv_s * QuadVal::from_double(fs);
                const TorusPoint x = point_at_eigen(f, {pu, ps});
                const TorusPoint fx = apply(f, x);
                const auto xi = eigen_in_chart(f, cells[i], x);
                const auto xj = eigen_in_chart(f, cells[j], fx);
                if (!xi || !xj) continue;  // quantization pushed the sample out
                ++rep.samples_checked;
                const QuadVal offs = xj->y - f.lam_s * xi->y;
                QuadVal a = f.lam_s * cells[i].s_range.lo + offs;
                QuadVal b = f.lam_s * cells[i].s_range.hi + offs;
                if (a > b) std::swap(a, b);
                const bool s_ok = a >= cells[j].s_range.lo && b <= cells[j].s_range.hi;
                const QuadVal offu = xj->x - f.lam_u * xi->x;
                QuadVal c = f.lam_u * cells[i].u_range.lo + offu;
                QuadVal d = f.lam_u * cells[i].u_range.hi + offu;
                if (c > d) std::swap(c, d);
                const bool u_ok = c <= cells[j].u_range.lo && d >= cells[j].u_range.hi;
                if (!s_ok || !u_ok) ++rep.sample_violations;
            }
        }
    }

    // Boundary invariance as box complexes, exact.
    std::vector<Face> stable_faces, unstable_faces;
    for (const auto& c : cells) {
        stable_faces.push_back(make_face(f, true, c.u_range.lo, c.s_range));
        stable_faces.push_back(make_face(f, true, c.u_range.hi, c.s_range));
        unstable_faces.push_back(make_face(f, false, c.s_range.lo, c.u_range));
        unstable_faces.push_back(make_face(f, false, c.s_range.hi, c.u_range));
    }
    rep.boundary_stable_faces = static_cast<long long>(stable_faces.size());
    rep.boundary_unstable_faces = static_cast<long long>(unstable_faces.size());

    // f(stable boundary) inside the stable boundary
    rep.stable_boundary_invariant = true;
    for (const auto& fc : stable_faces) {
        QuadVal aa = f.lam_s * fc.range.lo, bb = f.lam_s * fc.range.hi;
        if (aa > bb) std::swap(aa, bb);
        const Face img = make_face(f, true, f.lam_u * fc.fixed, {aa, bb});
        if (!face_covered(f, img, true, stable_faces)) {
            rep.stable_boundary_invariant = false;
            break;
        }
    }

    // f(unstable boundary) onto the unstable boundary: every unstable face
    // is covered by the images of unstable faces.
    std::vector<Face> unstable_images;
    unstable_images.reserve(unstable_faces.size());
    for (const auto& gc : unstable_faces) {
        QuadVal aa = f.lam_u * gc.range.lo, bb = f.lam_u * gc.range.hi;
        if (aa > bb) std::swap(aa, bb);
        unstable_images.push_back(make_face(f, false, f.lam_s * gc.fixed, {aa, bb}));
    }
    rep.unstable_boundary_invariant = true;
    for (const auto& fc : unstable_faces) {
        if (!face_covered(f, fc, false, unstable_images)) {
            rep.unstable_boundary_invariant = false;
            break;
        }
    }

    // Forward-cylinder structure: one-sided intersections keep the full
    // stable extent of the first cell while the unstable extent contracts.
    const int depth = 6;
    for (int check = 0; check < 24; ++check) {
        const TorusPoint x(rng.uniform(), rng.uniform());
        std::vector<size_t> code;
        TorusPoint p = x;
        bool interior = true;
        for (int n = 0; n <= depth && interior; ++n) {
            size_t hit = m;
            for (size_t i = 0; i < m; ++i) {
                if (center_gap(f, p, centers[i]) > diams[i] / 2 + 1e-9) continue;
                if (contains_interior(f, cells[i], p)) {
                    hit = i;
                    break;
                }
            }
            if (hit == m) {
                interior = false;
                break;
            }
            code.push_back(hit);
            p = apply(f, p);
        }
        if (!interior) continue;
        ++rep.cylinder_checks;
        Rectangle cyl = cells[code.back()];
        bool fine = true;
        for (int n = depth - 1; n >= 0 && fine; --n) {
            const auto inter = intersect_common_chart(f, cells[code[static_cast<size_t>(n)]],
                                                      preimage_rectangle(f, cyl));
            if (!inter) {
                fine = false;
                break;
            }
            cyl = *inter;
        }
        const Rectangle& first = cells[code[0]];
        if (!fine || cyl.width_s() != first.width_s())
            ++rep.cylinder_violations;
        else {
            // the unstable extent contracts from the last cell of the chain
            const double shrink = std::pow(std::fabs(f.lambda_u), -depth) * (1 + 1e-9);
            const double start = cells[code.back()].width_u().to_double();
            if (cyl.width_u().to_double() > start * shrink + 1e-15) ++rep.cylinder_violations;
        }
    }

    return rep;
}

}  // namespace anosov
