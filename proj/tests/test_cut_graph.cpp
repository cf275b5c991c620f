#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "kirigami/cut_graph.hpp"
#include "random_specs.hpp"

using namespace kirigami;
using kirigami::testing::fixture;

namespace {

bool has_code(const ValidationReport& r, const std::string& code) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.code == code; });
}

KirigamiSpec square_with(std::vector<Point2> v, std::vector<std::pair<int, int>> e, Point2 p = {0, 0.5},
                         Point2 q = {1, 0.5}) {
    KirigamiSpec s;
    s.domain = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    s.vertices = std::move(v);
    s.edges = std::move(e);
    s.p = p;
    s.q = q;
    return s;
}

}  // namespace

TEST(Validate, AcceptsFixtures) {
    for (auto name : {"vertical_cut.json", "three_geodesics.json", "obstruction_c03.json", "cut_free.json", "two_cuts.json"})
        EXPECT_TRUE(validate(fixture(name)).ok()) << name << ": " << validate(fixture(name)).summary();
}

TEST(Validate, RejectsBrokenInputs) {
    EXPECT_TRUE(has_code(validate(square_with({{0.2, 0.2}, {0.8, 0.8}, {0.2, 0.8}, {0.8, 0.2}}, {{0, 1}, {2, 3}})),
                         "edges cross at non-vertex"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {0.5, 0.2}}, {{0, 1}})), "duplicate vertices"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {0.5, 0.8}}, {{0, 0}})), "zero-length edge"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {0.5, 0.8}}, {{0, 2}})), "edge index"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {1.5, 0.8}}, {{0, 1}})), "vertex outside domain"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {0.5, 0.8}}, {{0, 1}}, {0.5, 0.5})), "p in L"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0.2}, {0.5, 0.8}}, {{0, 1}}, {0, 0.5}, {0.5, 0.8})), "q in L"));
    EXPECT_TRUE(has_code(validate(square_with({{0.5, 0}, {0.5, 1}}, {{0, 1}})), "separated"));
    // a cut between two corners of the domain
    KirigamiSpec rh = square_with({{0, 0}, {1, 1}}, {{0, 1}}, {0, 0.5}, {1, 0.5});
    EXPECT_TRUE(has_code(validate(rh), "separated"));
    EXPECT_TRUE(has_code(validate(square_with({{0.2, 0.5}, {0.6, 0.5}, {0.4, 0.5}, {0.8, 0.5}}, {{0, 1}, {2, 3}})),
                         "edges overlap"));

    KirigamiSpec s = square_with({}, {});
    std::reverse(s.domain.begin(), s.domain.end());
    EXPECT_TRUE(has_code(validate(s), "domain orientation"));
    s.domain = {{0, 0}, {1, 0}, {0.5, 0.2}, {1, 1}, {0, 1}};
    EXPECT_TRUE(has_code(validate(s), "domain convexity"));
    EXPECT_THROW(require_valid(s), ValidationError);
}

TEST(Validate, CutsMayTouchTheBoundary) {
    EXPECT_TRUE(validate(square_with({{0.5, 0}, {0.5, 0.6}}, {{0, 1}})).ok());
}

TEST(DropIsolated, WarnsAndReindexes) {
    KirigamiSpec s = square_with({{0.3, 0.3}, {0.5, 0.2}, {0.5, 0.8}}, {{1, 2}});
    std::vector<std::string> warnings;
    KirigamiSpec t = drop_isolated_vertices(s, &warnings);
    ASSERT_EQ(t.vertices.size(), 2u);
    EXPECT_EQ(t.edges[0], (std::pair<int, int>{0, 1}));
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(SlitComplex, SectorWidthsSumToFullTurn) {
    for (auto& s : kirigami::testing::random_specs(60, 11)) {
        SlitComplex cx = build_slit_complex(s);
        for (size_t v = 0; v < s.vertices.size(); ++v) {
            double total = 0;
            for (int sec : cx.vertex_sectors[v]) total += cx.sectors[sec].width;
            EXPECT_NEAR(total, kTwoPi, 8e-9);
            EXPECT_EQ(cx.vertex_sectors[v].size(), cx.incident[v].size());
        }
    }
}

TEST(SlitComplex, BranchVertexHasThreeSectors) {
    KirigamiSpec s = square_with({{0.5, 0.5}, {0.5, 0.8}, {0.3, 0.3}, {0.7, 0.3}}, {{0, 1}, {0, 2}, {0, 3}});
    SlitComplex cx = build_slit_complex(s);
    ASSERT_EQ(cx.vertex_sectors[0].size(), 3u);
    std::vector<double> w;
    for (int sec : cx.vertex_sectors[0]) w.push_back(cx.sectors[sec].width);
    std::sort(w.begin(), w.end());
    EXPECT_NEAR(w[0], kPi / 2, 1e-12);  // between the two lower branches
    EXPECT_NEAR(w[1], 3 * kPi / 4, 1e-12);
    EXPECT_NEAR(w[2], 3 * kPi / 4, 1e-12);
    int down = cx.sector_containing(0, {0, -1});
    ASSERT_GE(down, 0);
    EXPECT_NEAR(cx.sectors[down].width, kPi / 2, 1e-12);
    EXPECT_EQ(cx.sector_containing(0, {0, 1}), -2);
    EXPECT_EQ(cx.vertex_sectors[1].size(), 1u);
    EXPECT_NEAR(cx.sectors[cx.vertex_sectors[1][0]].width, kTwoPi, 1e-12);
}

TEST(SlitComplex, InvariantUnderRelabeling) {
    for (auto& s : kirigami::testing::random_specs(30, 12)) {
        size_t n = s.vertices.size();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        KirigamiSpec t = s;
        for (size_t i = 0; i < n; ++i) t.vertices[perm[i]] = s.vertices[i];
        for (auto& e : t.edges) e = {perm[e.first], perm[e.second]};
        SlitComplex a = build_slit_complex(s), b = build_slit_complex(t);
        for (size_t i = 0; i < n; ++i) {
            std::vector<double> wa, wb;
            for (int sec : a.vertex_sectors[i]) wa.push_back(a.sectors[sec].width);
            for (int sec : b.vertex_sectors[perm[i]]) wb.push_back(b.sectors[sec].width);
            std::sort(wa.begin(), wa.end());
            std::sort(wb.begin(), wb.end());
            ASSERT_EQ(wa.size(), wb.size());
            for (size_t k = 0; k < wa.size(); ++k) EXPECT_NEAR(wa[k], wb[k], 1e-12);
        }
    }
}

TEST(Components, PartitionEdges) {
    for (auto& s : kirigami::testing::random_specs(60, 13)) {
        Forest f = components(s);
        std::vector<int> seen(s.edges.size(), 0);
        for (size_t t = 0; t < f.trees.size(); ++t)
            for (int e : f.trees[t].edges) {
                ++seen[e];
                EXPECT_EQ(f.tree_of_edge[e], int(t));
            }
        for (int c : seen) EXPECT_EQ(c, 1);
    }
}

TEST(Components, PathInTree) {
    KirigamiSpec s = square_with({{0.5, 0.5}, {0.5, 0.8}, {0.3, 0.3}, {0.7, 0.3}}, {{0, 1}, {0, 2}, {0, 3}});
    Forest f = components(s);
    ASSERT_EQ(f.trees.size(), 1u);
    EXPECT_FALSE(f.has_cycle());
    EXPECT_EQ(f.path(s, 1, 3), (std::vector<int>{1, 0, 3}));
    EXPECT_EQ(f.trees[0].leaves.size(), 3u);
}
