#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "kirigami/geodesic.hpp"
#include "random_specs.hpp"

using namespace kirigami;
using kirigami::testing::fixture;

namespace {

std::set<std::vector<int>> sequences(const GeodesicSet& gs) {
    std::set<std::vector<int>> out;
    for (auto& g : gs.geodesics) out.insert(g.vertex_sequence());
    return out;
}

}  // namespace

TEST(Geodesics, VerticalCutHasTwo) {
    KirigamiSpec s = fixture("vertical_cut.json");
    GeodesicSet gs = all_geodesics(s);
    EXPECT_NEAR(gs.distance, 2 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(sequences(gs), (std::set<std::vector<int>>{{-1, 0, -2}, {-1, 1, -2}}));
    for (auto& g : gs.geodesics) {
        EXPECT_NEAR(g.length, gs.distance, 1e-12);
        EXPECT_EQ(g.sides.size(), 1u);
        EXPECT_FALSE(g.near_tie);
    }
}

TEST(Geodesics, CutFreeIsTheSegment) {
    GeodesicSet gs = all_geodesics(fixture("cut_free.json"));
    ASSERT_EQ(gs.geodesics.size(), 1u);
    EXPECT_NEAR(gs.distance, 1.0, 1e-15);
    EXPECT_EQ(gs.geodesics[0].waypoints.size(), 2u);
}

TEST(Geodesics, ThreeOfEqualLength) {
    KirigamiSpec s = fixture("three_geodesics.json");
    GeodesicSet gs = all_geodesics(s);
    double want = 2 + 2 * std::sqrt(2.0);
    EXPECT_NEAR(gs.distance, want, 1e-9);
    EXPECT_EQ(sequences(gs), (std::set<std::vector<int>>{{-1, 0, -2}, {-1, 1, 2, -2}, {-1, 1, 3, -2}}));
    EXPECT_NEAR(brute_force_distance(s, 3), want, 1e-9);
}

TEST(Geodesics, PathAlongACut) {
    // the cut lies on the segment pq's line: the geodesic runs along it
    KirigamiSpec s;
    s.domain = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    s.vertices = {{0.3, 0.5}, {0.7, 0.5}, {0.5, 0.5}, {0.5, 0.9}};
    s.edges = {{0, 2}, {2, 1}, {2, 3}};
    s.p = {0, 0.5};
    s.q = {1, 0.5};
    GeodesicSet gs = all_geodesics(s);
    EXPECT_NEAR(gs.distance, 1.0, 1e-12);
    ASSERT_EQ(gs.geodesics.size(), 1u);
    EXPECT_EQ(gs.geodesics[0].vertex_sequence(), (std::vector<int>{-1, 0, 2, 1, -2}));
    EXPECT_EQ(gs.geodesics[0].contains_cuts.size(), 2u);
}

TEST(EdgeAdmissible, CrossTouchAndOverlap) {
    KirigamiSpec s = fixture("vertical_cut.json");
    SlitComplex cx = build_slit_complex(s);
    EXPECT_FALSE(edge_admissible(kTerminalP, kTerminalQ, s, cx).admissible);  // crosses the cut
    EXPECT_TRUE(edge_admissible(kTerminalP, 0, s, cx).admissible);            // ends on the cut
    auto full = edge_admissible(0, 1, s, cx);
    EXPECT_TRUE(full.admissible);
    EXPECT_EQ(full.cut, 0);

    KirigamiSpec u = s;
    u.vertices = {{0, -1}, {0, 0}, {0, 1}};
    u.edges = {{0, 1}, {1, 2}};
    SlitComplex cu = build_slit_complex(u);
    EXPECT_FALSE(edge_admissible(0, 2, u, cu).admissible);  // passes through vertex 1
}

TEST(Geodesics, SeparatedTerminals) {
    KirigamiSpec s;
    s.domain = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    s.vertices = {{0.5, 0}, {0.5, 1}};
    s.edges = {{0, 1}};
    s.p = {0, 0.5};
    s.q = {1, 0.5};
    EXPECT_TRUE(std::isinf(geodesic_distance(s)));
    EXPECT_THROW(all_geodesics(s), NoPathError);
}

TEST(Geodesics, MatchBruteForceOnRandomSpecs) {
    for (auto& s : kirigami::testing::random_specs(40, 21)) {
        double d = geodesic_distance(s);
        double b = brute_force_distance(s, int(s.vertices.size()));
        EXPECT_NEAR(d, b, 1e-7);
    }
}

TEST(Geodesics, StructureOnRandomSpecs) {
    for (auto& s : kirigami::testing::random_specs(60, 22)) {
        GeodesicSet gs = all_geodesics(s);
        ASSERT_FALSE(gs.geodesics.empty());
        SlitComplex cx = build_slit_complex(s);
        for (auto& g : gs.geodesics) {
            auto seq = g.vertex_sequence();
            EXPECT_EQ(seq.front(), kTerminalP);
            EXPECT_EQ(seq.back(), kTerminalQ);
            std::set<int> interior(seq.begin() + 1, seq.end() - 1);
            EXPECT_EQ(interior.size(), seq.size() - 2);
            double len = 0;
            for (size_t i = 0; i + 1 < g.waypoints.size(); ++i) {
                len += dist(g.waypoints[i].pt, g.waypoints[i + 1].pt);
                EXPECT_TRUE(edge_admissible(seq[i], seq[i + 1], s, cx).admissible);
            }
            EXPECT_NEAR(len, g.length, 1e-7);
            EXPECT_NEAR(g.length, gs.distance, 1e-7);
            EXPECT_TRUE(sector_consistent(g, s, cx));
        }
    }
}

TEST(Shorten, PullsADetourTaut) {
    KirigamiSpec s = fixture("vertical_cut.json");
    ShortenResult r = shorten({{-1, 0}, {-0.5, 1.8}, {0.2, 1.5}, {1, 0}}, s);
    EXPECT_NEAR(r.path.length, 2 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(r.path.vertex_sequence(), (std::vector<int>{-1, 1, -2}));
    EXPECT_LE(r.rounds, r.round_bound);
    for (size_t i = 1; i < r.lengths.size(); ++i) EXPECT_LE(r.lengths[i], r.lengths[i - 1] + 1e-12);
}

TEST(Shorten, ReachesTheDistanceFromRandomAdmissiblePaths) {
    // the upper boundary of the unit square is clear of all cuts
    for (auto& s : kirigami::testing::random_specs(30, 23)) {
        std::vector<Point2> tau{s.p, {0, 1}, {1, 1}, s.q};
        SlitComplex cx = build_slit_complex(s);
        bool clear = true;
        for (size_t i = 0; i + 1 < tau.size(); ++i) clear = clear && segment_clear(tau[i], tau[i + 1], s, cx);
        if (!clear) continue;
        ShortenResult r = shorten(tau, s);
        EXPECT_LE(r.rounds, r.round_bound);
        EXPECT_GE(r.path.length, geodesic_distance(s) - 1e-9);
        for (size_t i = 1; i < r.lengths.size(); ++i) EXPECT_LE(r.lengths[i], r.lengths[i - 1] + 1e-12);
    }
}

TEST(BruteForce, BudgetIsEnforced) {
    KirigamiSpec s = fixture("three_geodesics.json");
    EXPECT_THROW(brute_force_distance(s, 4, {}, 1), BudgetExceededError);
}
