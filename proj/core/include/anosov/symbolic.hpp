#pragma once

// Symbolic dynamics over a Markov partition: transition matrix, admissible
// windows of the subshift, cylinder rectangles K_N(a), the finite-precision
// semiconjugation pi, and spectral diagnostics.
//
// Letters are 1-based cell indices (1..m) everywhere, matching the external
// word and matrix formats.

#include <cstdint>
#include <optional>
#include <vector>

#include "anosov/partition.hpp"

namespace anosov {

struct TransitionMatrix {
    std::size_t m = 0;
    std::vector<std::uint8_t> entries;  // row-major m*m of {0,1}

    bool at(std::size_t i, std::size_t j) const { return entries[i * m + j] != 0; }
    std::uint8_t& at_ref(std::size_t i, std::size_t j) { return entries[i * m + j]; }
};

/// Finite admissible window a_{-N}..a_N, letters in 1..m.
struct ItineraryWindow {
    long long window = 0;
    std::vector<std::size_t> word;  // size 2N+1

    std::size_t at(long long n) const { return word[static_cast<size_t>(n + window)]; }
};

/// Result of coding a point: either a full window or the first index (in
/// |j|-increasing order) whose iterate lies on the partition boundary.
struct EncodeOutcome {
    bool boundary_hit = false;
    long long hit_index = 0;
    ItineraryWindow word;  // valid when !boundary_hit
};

struct CylinderIntersection {
    ItineraryWindow word;
    Rectangle box;  // K_N(a), a single closed rectangle
    double diameter = 0.0;
};

struct InjectivityReport {
    long long samples = 0;
    long long boundary_excluded = 0;
    long long checked = 0;
    long long violations = 0;
    double max_roundtrip_error = 0.0;
    double max_diam_bound = 0.0;
};

/// A_ij = 1 iff int R_i meets f^{-1} int R_j, decided exactly.
TransitionMatrix transition_matrix(const ToralAutomorphism& f, const MarkovPartition& partition);

/// All consecutive pairs allowed; single letters are admissible.
/// Throws IndexOutOfRange for letters outside 1..m.
bool is_admissible(const TransitionMatrix& A, const ItineraryWindow& word);

/// a_j = index of the cell whose interior contains f^j(x), |j| <= N.
EncodeOutcome encode(const ToralAutomorphism& f, const MarkovPartition& partition,
                     const TorusPoint& x, long long depth);

/// All admissible windows consistent with closure membership along the
/// orbit (the coding choices of a boundary point), capped in count.
std::vector<ItineraryWindow> encode_all(const ToralAutomorphism& f,
                                        const MarkovPartition& partition, const TorusPoint& x,
                                        long long depth, std::size_t cap = 64);

/// K_N(a) by exact iterated pullback; throws EmptyCylinder if some step
/// empties (which a valid Markov partition never does).
CylinderIntersection cylinder(const ToralAutomorphism& f, const MarkovPartition& partition,
                              const TransitionMatrix& A, const ItineraryWindow& word);

/// Center of K_N and certified radius diam(K_N)/2.
std::pair<TorusPoint, double> pi_point(const ToralAutomorphism& f,
                                       const MarkovPartition& partition,
                                       const TransitionMatrix& A, const ItineraryWindow& word);

/// dist(pi(shifted word), f(pi(word))); requires window >= 2.
double semiconjugacy_residual(const ToralAutomorphism& f, const MarkovPartition& partition,
                              const TransitionMatrix& A, const ItineraryWindow& word);

/// Round-trip pi(encode(x)) over sampled points with boundary-free windows.
InjectivityReport injectivity_check(const ToralAutomorphism& f, const MarkovPartition& partition,
                                    const TransitionMatrix& A, long long samples,
                                    long long depth, std::uint64_t seed = 1);

/// Dominant eigenvalue by power iteration to 1e-10 relative change.
/// Throws Reducible when the transition graph is not strongly connected.
double perron_eigenvalue(const TransitionMatrix& A);

bool is_irreducible(const TransitionMatrix& A);

/// Shift: drops one index at each end and recenters (no symbol invented).
ItineraryWindow shift_word(const ItineraryWindow& word);

/// Random admissible window generated by walking the transition graph.
ItineraryWindow random_admissible_word(const TransitionMatrix& A, long long window,
                                       std::uint64_t seed);

/// Cell-interior membership with a double prefilter; used by the coding
/// paths, exact verdicts.
class CellLocator {
  public:
    CellLocator(const ToralAutomorphism& f, const MarkovPartition& partition);

    /// Index of the interior-containing cell, or nullopt for boundary points.
    std::optional<std::size_t> interior_cell(const TorusPoint& p) const;
    /// All cells whose closure contains p (one when interior, >1 on faces).
    std::vector<std::size_t> closure_cells(const TorusPoint& p) const;

  private:
    const ToralAutomorphism& f_;
    const MarkovPartition& partition_;
    std::vector<TorusPoint> centers_;
    std::vector<double> radii_;
};

}  // namespace anosov
