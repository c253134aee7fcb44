#pragma once

// File formats: partition.json (doubles for reading, exact endpoint triples
// for verification-grade reloads), matrix.csv, pseudo-orbit text files and
// the diagnostic SVG rendering.

#include <array>
#include <string>
#include <vector>

#include "anosov/partition.hpp"
#include "anosov/symbolic.hpp"

namespace anosov {

struct PartitionFile {
    std::array<std::int64_t, 4> matrix{};
    ConstantsBudget budget;
    MarkovPartition partition;
};

std::string partition_to_json(const ToralAutomorphism& f, const ConstantsBudget& budget,
                              const MarkovPartition& partition);
PartitionFile partition_from_json(const std::string& text);

std::string matrix_to_csv(const TransitionMatrix& A);
TransitionMatrix matrix_from_csv(const std::string& text);

/// One "x y" pair per line, indices -N..N in order.
std::vector<TorusPoint> pseudo_orbit_from_text(const std::string& text);
std::string pseudo_orbit_to_text(const std::vector<TorusPoint>& points);

/// Cells drawn as parallelograms in the unit square with wraparound copies.
std::string partition_to_svg(const ToralAutomorphism& f, const MarkovPartition& partition);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace anosov
