#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "kirigami/geodesic.hpp"
#include "kirigami/ordering.hpp"

using namespace kirigami;
using kirigami::testing::fixture;

namespace {

double total_area(const RegionDecomposition& d) {
    double a = 0;
    for (auto& pc : d.pieces) a += signed_area(pc.polygon);
    return a;
}

}  // namespace

TEST(SimpleSubloops, FigureEightSplits) {
    std::vector<LoopPoint> loop;
    for (Point2 x : {Point2{0, 0}, {1, 1}, {2, 2}, {2, 0}, {1, 1}, {0, 2}}) loop.push_back({x, EdgeLabel::Tree});
    auto parts = simple_subloops(loop);
    ASSERT_EQ(parts.size(), 2u);
    std::vector<double> areas;
    for (auto& p : parts) {
        std::vector<Point2> pts;
        for (auto& lp : p) pts.push_back(lp.pt);
        areas.push_back(signed_area(pts));
    }
    EXPECT_NEAR(std::abs(areas[0]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(areas[1]), 1.0, 1e-12);
    EXPECT_LT(areas[0] * areas[1], 0.0);
}

TEST(SimpleSubloops, DropsDegenerateLoops) {
    std::vector<LoopPoint> loop;
    for (Point2 x : {Point2{0, 0}, {1, 0}, {2, 0}, {1, 0}}) loop.push_back({x, EdgeLabel::Lower});
    EXPECT_TRUE(simple_subloops(loop).empty());
}

TEST(Precedes, LowerBeforeUpper) {
    GeodesicSet gs = all_geodesics(fixture("vertical_cut.json"));
    const GeodesicPolygonal* low = nullptr;
    const GeodesicPolygonal* up = nullptr;
    for (auto& g : gs.geodesics) (g.waypoints[1].pt.y < 0 ? low : up) = &g;
    ASSERT_TRUE(low && up);
    EXPECT_TRUE(precedes(*low, *up));
    EXPECT_FALSE(precedes(*up, *low));
    EXPECT_TRUE(precedes(*low, *low));
}

TEST(Chain, ThreeGeodesicsOrder) {
    GeodesicChain ch = build_chain(all_geodesics(fixture("three_geodesics.json")));
    ASSERT_EQ(ch.geodesics.size(), 3u);
    EXPECT_EQ(ch.geodesics[0].vertex_sequence(), (std::vector<int>{-1, 1, 2, -2}));
    EXPECT_EQ(ch.geodesics[1].vertex_sequence(), (std::vector<int>{-1, 1, 3, -2}));
    EXPECT_EQ(ch.geodesics[2].vertex_sequence(), (std::vector<int>{-1, 0, -2}));
    for (double a : ch.enclosed_area) EXPECT_GT(a, 0.0);
}

TEST(Chain, ArclengthAlongGeodesic) {
    GeodesicChain ch = build_chain(all_geodesics(fixture("vertical_cut.json")));
    EXPECT_NEAR(arclength_at(ch.geodesics[0], {0, -1}), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(arclength_at(ch.geodesics[0], {0.5, -0.5}), 1.5 * std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(std::isnan(arclength_at(ch.geodesics[0], {0, 1})));
}

TEST(Decompose, VerticalCutRegionIsTwoTriangles) {
    KirigamiSpec s = fixture("vertical_cut.json");
    RegionDecomposition d = decompose(build_chain(all_geodesics(s)), s);
    int first = 0, last = 0;
    for (auto& pc : d.pieces) {
        if (pc.kind == PieceKind::First || pc.kind == PieceKind::Last) {
            (pc.kind == PieceKind::First ? first : last)++;
            EXPECT_EQ(pc.polygon.size(), 3u);
            EXPECT_NEAR(signed_area(pc.polygon), 1.0, 1e-12);
        }
        EXPECT_NE(pc.kind, PieceKind::Middle);
    }
    EXPECT_EQ(first, 1);
    EXPECT_EQ(last, 1);
    EXPECT_NEAR(total_area(d), signed_area(s.domain), 1e-12);
    EXPECT_TRUE(d.terminals_on_boundary);
}

TEST(Decompose, PiecesTileTheDomain) {
    for (auto name : {"vertical_cut.json", "three_geodesics.json", "two_cuts.json", "cut_free.json"}) {
        KirigamiSpec s = fixture(name);
        RegionDecomposition d = decompose(build_chain(all_geodesics(s)), s);
        EXPECT_NEAR(total_area(d), signed_area(s.domain), 1e-9) << name;
        for (auto& pc : d.pieces) {
            EXPECT_GT(signed_area(pc.polygon), 0.0) << name;
            EXPECT_TRUE(is_simple(pc.polygon)) << name;
        }
    }
}

TEST(Decompose, MiddlePieceBetweenTwoTrees) {
    KirigamiSpec s = fixture("two_cuts.json");
    RegionDecomposition d = decompose(build_chain(all_geodesics(s)), s);
    int middles = 0;
    for (auto& pc : d.pieces)
        if (pc.kind == PieceKind::Middle) {
            ++middles;
            // offset required between the two upper and lower portions, from the fixture coordinates
            double want = std::hypot(3.0, 2.0) - std::hypot(3.0, 2.4);
            EXPECT_NEAR(pc.target, want, 1e-12);
        }
    EXPECT_EQ(middles, 1);
}

TEST(Decompose, ExteriorTreeIsReported) {
    KirigamiSpec s = fixture("obstruction_c03.json");
    GeodesicChain ch = build_chain(all_geodesics(s));
    try {
        decompose(ch, s);
        FAIL() << "expected an exterior tree";
    } catch (const ExteriorTreeError& e) {
        EXPECT_EQ(e.trees.size(), 1u);
    }
}
