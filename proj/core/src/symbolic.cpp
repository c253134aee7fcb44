#include "anosov/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "anosov/rng.hpp"

namespace anosov {

TransitionMatrix transition_matrix(const ToralAutomorphism& f, const MarkovPartition& partition) {
    const auto& cells = partition.cells;
    const std::size_t m = cells.size();
    TransitionMatrix A;
    A.m = m;
    A.entries.assign(m * m, 0);

    std::vector<Rectangle> images;
    std::vector<TorusPoint> img_centers, centers;
    std::vector<double> img_diams, diams;
    for (const auto& c : cells) {
        images.push_back(image_rectangle(f, c));
        img_centers.push_back(base_point(f, images.back()));
        img_diams.push_back(diameter(f, images.back()));
        centers.push_back(base_point(f, c));
        diams.push_back(diameter(f, c));
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (torus_distance(f, img_centers[i], centers[j]) >
                (img_diams[i] + diams[j]) / 2 + 1e-9)
                continue;
            if (interiors_overlap(f, images[i], cells[j])) A.at_ref(i, j) = 1;
        }
    }
    // f is surjective and the cells cover, so every row and column has a 1
    for (std::size_t i = 0; i < m; ++i) {
        bool row = false, col = false;
        for (std::size_t j = 0; j < m; ++j) {
            row = row || A.at(i, j);
            col = col || A.at(j, i);
        }
        if (!row || !col) throw Error("transition_matrix: empty row or column");
    }
    return A;
}

bool is_admissible(const TransitionMatrix& A, const ItineraryWindow& word) {
    if (word.word.empty()) throw IndexOutOfRange("is_admissible: empty word");
    for (const auto a : word.word)
        if (a < 1 || a > A.m) throw IndexOutOfRange("is_admissible: letter outside 1..m");
    for (std::size_t i = 0; i + 1 < word.word.size(); ++i)
        if (!A.at(word.word[i] - 1, word.word[i + 1] - 1)) return false;
    return true;
}

CellLocator::CellLocator(const ToralAutomorphism& f, const MarkovPartition& partition)
    : f_(f), partition_(partition) {
    for (const auto& c : partition.cells) {
        centers_.push_back(base_point(f, c));
        radii_.push_back(diameter(f, c) / 2 + 1e-9);
    }
}

std::optional<std::size_t> CellLocator::interior_cell(const TorusPoint& p) const {
    for (std::size_t i = 0; i < partition_.cells.size(); ++i) {
        if (torus_distance(f_, p, centers_[i]) > radii_[i]) continue;
        if (contains_interior(f_, partition_.cells[i], p)) return i;
    }
    return std::nullopt;
}

std::vector<std::size_t> CellLocator::closure_cells(const TorusPoint& p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < partition_.cells.size(); ++i) {
        if (torus_distance(f_, p, centers_[i]) > radii_[i]) continue;
        if (contains_closure(f_, partition_.cells[i], p)) out.push_back(i);
    }
    return out;
}

namespace {

// orbit points f^j(x), j = -depth..depth, by exact grid iteration
std::vector<TorusPoint> orbit_window(const ToralAutomorphism& f, const TorusPoint& x,
                                     long long depth) {
    std::vector<TorusPoint> pts(static_cast<size_t>(2 * depth + 1));
    pts[static_cast<size_t>(depth)] = x;
    TorusPoint fwd = x, bwd = x;
    for (long long n = 1; n <= depth; ++n) {
        fwd = apply(f, fwd);
        bwd = apply_inverse(f, bwd);
        pts[static_cast<size_t>(depth + n)] = fwd;
        pts[static_cast<size_t>(depth - n)] = bwd;
    }
    return pts;
}

}  // namespace

EncodeOutcome encode(const ToralAutomorphism& f, const MarkovPartition& partition,
                     const TorusPoint& x, long long depth) {
    const CellLocator loc(f, partition);
    const auto pts = orbit_window(f, x, depth);
    EncodeOutcome out;
    out.word.window = depth;
    out.word.word.assign(pts.size(), 0);
    // scan in |j|-increasing order so a face point reports BoundaryHit(0)
    for (long long k = 0; k <= depth; ++k) {
        for (const long long j : {k, -k}) {
            if (j == 0 && k != 0) continue;
            const auto cell = loc.interior_cell(pts[static_cast<size_t>(depth + j)]);
            if (!cell) {
                out.boundary_hit = true;
                out.hit_index = j;
                out.word.word.clear();
                return out;
            }
            out.word.word[static_cast<size_t>(depth + j)] = *cell + 1;
        }
    }
    return out;
}

std::vector<ItineraryWindow> encode_all(const ToralAutomorphism& f,
                                        const MarkovPartition& partition, const TorusPoint& x,
                                        long long depth, std::size_t cap) {
    const CellLocator loc(f, partition);
    const auto pts = orbit_window(f, x, depth);
    std::vector<std::vector<std::size_t>> choices;
    for (const auto& p : pts) {
        choices.push_back(loc.closure_cells(p));
        if (choices.back().empty()) throw Error("encode_all: point not covered");
    }
    std::vector<ItineraryWindow> out;
    std::vector<std::size_t> cur;
    auto emit = [&](auto&& self, std::size_t idx) -> void {
        if (out.size() >= cap) return;
        if (idx == choices.size()) {
            ItineraryWindow w;
            w.window = depth;
            w.word = cur;
            for (auto& a : w.word) ++a;  // to 1-based
            out.push_back(std::move(w));
            return;
        }
        for (const auto c : choices[idx]) {
            cur.push_back(c);
            self(self, idx + 1);
            cur.pop_back();
            if (out.size() >= cap) return;
        }
    };
    emit(emit, 0);
    return out;
}

CylinderIntersection cylinder(const ToralAutomorphism& f, const MarkovPartition& partition,
                              const TransitionMatrix& A, const ItineraryWindow& word) {
    if (!is_admissible(A, word)) throw Error("cylinder: word not admissible");
    const long long N = word.window;
    CylinderIntersection out;
    out.word = word;
    // C_j = intersection over i <= j of f^(j-i) R_{a_i}; K_N = f^-N (C_N)
    Rectangle c = partition.cells[word.at(-N) - 1];
    for (long long j = -N + 1; j <= N; ++j) {
        const Rectangle img = image_rectangle(f, c);
        const auto inter = intersect_common_chart(f, partition.cells[word.at(j) - 1], img);
        if (!inter) throw EmptyCylinder("cylinder: empty at index " + std::to_string(j));
        c = *inter;
    }
    // recenter at index 0: K_N = f^-N (C_N)
    for (long long j = 0; j < N; ++j) c = preimage_rectangle(f, c);
    out.box = c;
    out.diameter = diameter(f, out.box);
    return out;
}

std::pair<TorusPoint, double> pi_point(const ToralAutomorphism& f,
                                       const MarkovPartition& partition,
                                       const TransitionMatrix& A, const ItineraryWindow& word) {
    const CylinderIntersection K = cylinder(f, partition, A, word);
    return {base_point(f, K.box), K.diameter / 2};
}

double semiconjugacy_residual(const ToralAutomorphism& f, const MarkovPartition& partition,
                              const TransitionMatrix& A, const ItineraryWindow& word) {
    if (word.window < 2) throw WindowTooSmall("semiconjugacy_residual: window < 2");
    const auto [px, pr] = pi_point(f, partition, A, word);
    const auto [sx, sr] = pi_point(f, partition, A, shift_word(word));
    return torus_distance(f, sx, apply(f, px));
}

InjectivityReport injectivity_check(const ToralAutomorphism& f, const MarkovPartition& partition,
                                    const TransitionMatrix& A, long long samples,
                                    long long depth, std::uint64_t seed) {
    InjectivityReport rep;
    rep.samples = samples;
    Rng rng(seed);
    for (long long s = 0; s < samples; ++s) {
        const TorusPoint x(rng.uniform(), rng.uniform());
        const EncodeOutcome enc = encode(f, partition, x, depth);
        if (enc.boundary_hit) {
            ++rep.boundary_excluded;
            continue;
        }
        if (!is_admissible(A, enc.word))
            throw Error("injectivity_check: interior coding not admissible");
        const CylinderIntersection K = cylinder(f, partition, A, enc.word);
        const double err = torus_distance(f, x, base_point(f, K.box));
        ++rep.checked;
        rep.max_roundtrip_error = std::max(rep.max_roundtrip_error, err);
        rep.max_diam_bound = std::max(rep.max_diam_bound, K.diameter);
        if (err > K.diameter) ++rep.violations;
    }
    return rep;
}

bool is_irreducible(const TransitionMatrix& A) {
    const std::size_t m = A.m;
    auto reach = [&](bool forward) {
        std::vector<char> seen(m, 0);
        std::deque<std::size_t> q{0};
        seen[0] = 1;
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop_front();
            for (std::size_t w = 0; w < m; ++w) {
                const bool edge = forward ? A.at(v, w) : A.at(w, v);
                if (edge && !seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return reach(true) && reach(false);
}

double perron_eigenvalue(const TransitionMatrix& A) {
    if (!is_irreducible(A)) throw Reducible("perron_eigenvalue: transition graph not irreducible");
    const std::size_t m = A.m;
    // power iteration on A + I (primitive for irreducible A, so the
    // iteration cannot cycle), dominant value shifted back by 1
    std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m))), w(m);
    double lam = 0.0;
    for (int it = 0; it < 200000; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double acc = v[i];
            for (std::size_t j = 0; j < m; ++j)
                if (A.at(i, j)) acc += v[j];
            w[i] = acc;
            norm += acc * acc;
        }
        norm = std::sqrt(norm);
        const double next = norm - 1.0;
        for (std::size_t i = 0; i < m; ++i) w[i] /= norm;
        v.swap(w);
        if (it > 2 && std::fabs(next - lam) <= 1e-10 * std::max(1.0, std::fabs(next)))
            return next;
        lam = next;
    }
    return lam;
}

ItineraryWindow shift_word(const ItineraryWindow& word) {
    if (word.window < 1) throw WindowTooSmall("shift_word: nothing to shift");
    ItineraryWindow out;
    out.window = word.window - 1;
    out.word.assign(word.word.begin() + 2, word.word.end());
    return out;
}

ItineraryWindow random_admissible_word(const TransitionMatrix& A, long long window,
                                       std::uint64_t seed) {
    Rng rng(seed);
    ItineraryWindow w;
    w.window = window;
    std::size_t cur = static_cast<std::size_t>(rng.below(A.m));
    w.word.push_back(cur + 1);
    for (long long i = 1; i < 2 * window + 1; ++i) {
        std::vector<std::size_t> nexts;
        for (std::size_t j = 0; j < A.m; ++j)
            if (A.at(cur, j)) nexts.push_back(j);
        cur = nexts[static_cast<std::size_t>(rng.below(nexts.size()))];
        w.word.push_back(cur + 1);
    }
    return w;
}

}  // namespace anosov
