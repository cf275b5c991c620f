#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "kirigami/geodesic.hpp"
#include "kirigami/sealing.hpp"
#include "random_specs.hpp"

using namespace kirigami;
using kirigami::testing::fixture;

TEST(ShrinkCut, MovesOneEndpoint) {
    KirigamiSpec s = fixture("vertical_cut.json");
    KirigamiSpec t = shrink_cut(s, 0, 1, 0.5);
    ASSERT_EQ(t.edges.size(), 1u);
    Point2 a = t.vertices[t.edges[0].first], b = t.vertices[t.edges[0].second];
    EXPECT_NEAR(dist(a, b), 1.5, 1e-15);
    EXPECT_NEAR(std::max(a.y, b.y), 0.5, 1e-15);
    EXPECT_TRUE(shrink_cut(s, 0, 0, 2.0).edges.empty());
}

TEST(ShrinkCut, DistanceOracle) {
    // upper end lowered to (0, 0.5): the upper route becomes 2 * sqrt(1 + 0.25)
    KirigamiSpec s = fixture("vertical_cut.json");
    EXPECT_NEAR(dist_with_shrunk_cut(s, 0, 1, 0.5), 2 * std::sqrt(1.25), 1e-12);
    EXPECT_NEAR(dist_with_shrunk_cut(s, 0, 1, 0.0), 2 * std::sqrt(2.0), 1e-12);
}

TEST(MaxSeal, EssentialCutStays) {
    KirigamiSpec s = fixture("vertical_cut.json");
    EXPECT_NEAR(max_seal(s, 0, 0), 0.0, 1e-9);
    EXPECT_NEAR(max_seal(s, 0, 1), 0.0, 1e-9);
    SealTrace tr = seal_all(s);
    EXPECT_TRUE(tr.removed_cuts.empty());
    EXPECT_EQ(tr.final_spec.edges.size(), 1u);
}

TEST(MaxSeal, ShadowedCutIsRemoved) {
    KirigamiSpec s = fixture("vertical_cut.json");
    s.vertices.push_back({0.5, 1.5});
    s.vertices.push_back({0.9, 1.8});
    s.edges.push_back({2, 3});
    SealTrace tr = seal_all(s);
    EXPECT_EQ(tr.removed_cuts, (std::vector<int>{1}));
    EXPECT_EQ(tr.final_spec.edges.size(), 1u);
    EXPECT_EQ(tr.final_to_original, (std::vector<int>{0}));
    EXPECT_TRUE(verify_minimal(tr.final_spec).ok());
}

TEST(MaxSeal, PartialShrinkStopsAtTheGeodesic) {
    // a tall cut: the lower end can rise until the route below reaches the
    // length of the route above
    KirigamiSpec s = fixture("vertical_cut.json");
    s.vertices = {{0, -1.5}, {0, 1}};
    SealTrace tr = seal_all(s);
    ASSERT_EQ(tr.final_spec.edges.size(), 1u);
    Point2 a = tr.final_spec.vertices[tr.final_spec.edges[0].first];
    Point2 b = tr.final_spec.vertices[tr.final_spec.edges[0].second];
    EXPECT_NEAR(std::min(a.y, b.y), -1.0, 1e-8);
    EXPECT_NEAR(all_geodesics(tr.final_spec).distance, 2 * std::sqrt(2.0), 1e-7);
    EXPECT_EQ(all_geodesics(tr.final_spec).geodesics.size(), 2u);
}

TEST(SealAll, ThreeGeodesicsAlreadyMinimal) {
    KirigamiSpec s = fixture("three_geodesics.json");
    MinimalityReport m = verify_minimal(s);
    EXPECT_TRUE(m.ok());
    SealTrace tr = seal_all(s);
    EXPECT_TRUE(tr.removed_cuts.empty());
    for (auto& st : tr.steps) EXPECT_NEAR(st.t, 0.0, 1e-7);
}

TEST(SealAll, PreservesDistanceOnRandomSpecs) {
    for (auto& s : kirigami::testing::random_specs(30, 31)) {
        double d = geodesic_distance(s);
        SealTrace tr = seal_all(s);
        EXPECT_NEAR(geodesic_distance(tr.final_spec), d, 1e-7);
        for (auto& st : tr.steps) EXPECT_NEAR(st.after, d, 1e-7);
        MinimalityReport m = verify_minimal(tr.final_spec);
        EXPECT_TRUE(m.ok()) << (m.failures.empty() ? "" : m.failures.front());
    }
}
