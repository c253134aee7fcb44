#include <doctest.h>

#include "anosov/io.hpp"

using namespace anosov;

namespace {

const ToralAutomorphism& cat_map() {
    static const ToralAutomorphism f = make_automorphism({2, 1, 1, 1});
    return f;
}

}  // namespace

TEST_CASE("partition json round trip preserves exact endpoints") {
    const auto& f = cat_map();
    const ConstantsBudget budget = geometric_budget(f, 0.08);
    const MarkovPartition p = build_partition(f, build_cover(f, budget));
    const std::string text = partition_to_json(f, budget, p);

    const PartitionFile pf = partition_from_json(text);
    CHECK(pf.matrix == f.m);
    CHECK(pf.budget.beta == budget.beta);
    CHECK(pf.budget.epsilon == budget.epsilon);
    REQUIRE(pf.partition.cells.size() == p.cells.size());
    for (size_t i = 0; i < p.cells.size(); ++i) {
        CHECK(pf.partition.cells[i].u_range.lo == p.cells[i].u_range.lo);
        CHECK(pf.partition.cells[i].u_range.hi == p.cells[i].u_range.hi);
        CHECK(pf.partition.cells[i].s_range.lo == p.cells[i].s_range.lo);
        CHECK(pf.partition.cells[i].s_range.hi == p.cells[i].s_range.hi);
    }
    CHECK_NOTHROW(validate_partition(f, pf.partition));
    CHECK(partition_to_json(f, pf.budget, pf.partition) == text);  // stable reserialization
}

TEST_CASE("matrix csv round trip") {
    TransitionMatrix A;
    A.m = 3;
    A.entries = {1, 1, 0, 0, 1, 1, 1, 0, 1};
    const std::string csv = matrix_to_csv(A);
    CHECK(csv == "1,1,0\n0,1,1\n1,0,1\n");
    const TransitionMatrix B = matrix_from_csv(csv);
    CHECK(B.m == 3);
    CHECK(B.entries == A.entries);
    CHECK_THROWS_AS(matrix_from_csv("1,2\n0,1\n"), Error);
    CHECK_THROWS_AS(matrix_from_csv("1,1\n0\n"), Error);
}

TEST_CASE("pseudo-orbit text round trip") {
    std::vector<TorusPoint> pts{TorusPoint(0.1, 0.2), TorusPoint(0.30000000001, 0.999),
                                TorusPoint(0, 0.5)};
    const std::string text = pseudo_orbit_to_text(pts);
    const auto back = pseudo_orbit_from_text(text);
    REQUIRE(back.size() == pts.size());
    for (size_t i = 0; i < pts.size(); ++i) CHECK(back[i] == pts[i]);
    CHECK_THROWS_AS(pseudo_orbit_from_text("0.5\n"), Error);
    CHECK(pseudo_orbit_from_text("# comment\n0.5 0.5\n").size() == 1);
}

TEST_CASE("svg rendering") {
    const auto& f = cat_map();
    const MarkovPartition p = build_partition(f, build_cover(f, geometric_budget(f, 0.08)));
    const std::string svg = partition_to_svg(f, p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    size_t polys = 0;
    for (size_t pos = 0; (pos = svg.find("<polygon", pos)) != std::string::npos; ++pos) ++polys;
    CHECK(polys >= p.cells.size());
}
