#pragma once

// Cover construction, refinement, and Markov partition building/verification.
//
// The production cover is built from an invariant web: one stable and one
// unstable segment through the fixed point 0, each terminated exactly on a
// crossing of the other. Such a web satisfies f(stable web) inside itself
// and f(unstable web) onto itself by construction, and the closures of the
// complementary faces form a partition by proper rectangles whose Markov
// conditions are then verified exactly, cell pair by cell pair.

#include <string>
#include <vector>

#include "anosov/local_product.hpp"
#include "anosov/rectangles.hpp"
#include "anosov/shadowing.hpp"

namespace anosov {

struct Cover {
    DenseNet net;                  // rectangle centers
    std::vector<Rectangle> rects;  // closed cover rectangles, diam <= 2*beta
};

/// Index of one refinement cell: base rectangle j split against k, with
/// n in 1..4 encoding (unstable-fiber-meets-k, stable-fiber-meets-k) as
/// (T,T)=1, (T,F)=2, (F,T)=3, (F,F)=4.
struct RefinedCellIndex {
    std::size_t j = 0, k = 0;
    int n = 0;
};

struct MarkovPartition {
    std::vector<Rectangle> cells;
    double diameter = 0.0;               // max cell diameter
    std::vector<std::string> provenance; // per-cell origin (web face / index set)
    long long degenerate_dropped = 0;    // zero-area arrangement cells discarded
};

struct CoverCheckReport {
    long long samples = 0;
    long long pairs_checked = 0;
    long long skipped = 0;
    long long violations = 0;
};

struct MarkovReport {
    long long admissible_pairs = 0;
    long long pair_violations = 0;      // exact fiber-inclusion failures
    long long samples_checked = 0;
    long long sample_violations = 0;
    long long boundary_stable_faces = 0;
    long long boundary_unstable_faces = 0;
    bool stable_boundary_invariant = false;   // f(stable boundary) inside itself
    bool unstable_boundary_invariant = false; // f(unstable boundary) onto itself
    long long cylinder_checks = 0;
    long long cylinder_violations = 0;
    std::vector<std::string> notes;  // first few violations, for reports

    bool clean() const {
        return pair_violations == 0 && sample_violations == 0 && cylinder_violations == 0 &&
               stable_boundary_invariant && unstable_boundary_invariant;
    }
};

/// Budget for the partition pipeline at cell scale beta (the strict
/// chain of make_budget caps beta two orders of magnitude below what a
/// desk-scale partition uses; this variant keeps the same invariant roles
/// with the geometric caps of the linear model: cells of diameter < delta,
/// fibers never epsilon-truncated, all lifts unambiguous).
ConstantsBudget geometric_budget(const ToralAutomorphism& f, double beta);

/// Largest pipeline beta for which image cells still have unambiguous
/// common lifts with their targets.
double max_pipeline_beta(const ToralAutomorphism& f);

/// Production cover: faces of the invariant web, every face diameter
/// <= 2*budget.beta, union exactly T^2. The net is the set of face centers.
Cover build_cover(const ToralAutomorphism& f, const ConstantsBudget& budget);

/// Net-centered product cover on a uniform k x k grid (used to exercise the
/// refinement operations on overlapping covers). Throws CoverageGap when
/// the rectangles fail to cover T^2 (verified exactly via the arrangement).
Cover make_grid_cover(const ToralAutomorphism& f, double half_width_unit, long long k);

/// Exact cover validation: union is all of T^2.
void validate_cover(const ToralAutomorphism& f, const Cover& cover, double beta);

/// Samples x in T_s with f(x) in T_t and checks both fiber inclusions by
/// exact endpoint comparison.
CoverCheckReport cover_markov_check(const ToralAutomorphism& f, const Cover& cover,
                                    long long samples, std::uint64_t seed = 1);

/// The four-way refinement of every ordered cover pair; exact products,
/// empty cells omitted. For each (j,k) the returned complexes partition
/// T_j with exactly additive areas.
std::vector<std::pair<RefinedCellIndex, BoxComplex>> refine_cells(const ToralAutomorphism& f,
                                                                  const Cover& cover);

/// Arrangement of all refinement cut-points into maximal boxes, closed,
/// deduplicated. A cover whose rectangles already have pairwise disjoint
/// interiors is returned as the closures of those interiors.
MarkovPartition build_partition(const ToralAutomorphism& f, const Cover& cover);

/// Exact verification of the Markov conditions, boundary invariance and
/// forward-cylinder structure. Violations are report entries, not errors.
MarkovReport verify_markov(const ToralAutomorphism& f, const MarkovPartition& partition,
                           long long samples_per_pair, std::uint64_t seed = 1);

/// Exact partition validity: areas sum to 1, interiors pairwise disjoint,
/// all cells proper. Throws on structural failure.
void validate_partition(const ToralAutomorphism& f, const MarkovPartition& partition);

// --- invariant web internals, exposed for tests and diagnostics ---

struct WebSegment {
    QuadVal lo, hi;  // parameter range, lo < 0 < hi
};

struct InvariantWeb {
    WebSegment unstable;  // {t * v_u : t in [lo, hi]} mod Z^2
    WebSegment stable;    // {t * v_s : t in [lo, hi]} mod Z^2
    std::vector<Rectangle> faces;
    double max_face_diameter = 0.0;
};

/// Builds the terminated invariant web with all face diameters <= max_diam.
InvariantWeb build_invariant_web(const ToralAutomorphism& f, double max_diam);

}  // namespace anosov
