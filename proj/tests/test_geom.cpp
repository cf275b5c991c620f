#include <gtest/gtest.h>

#include <random>

#include "kirigami/geom.hpp"

using namespace kirigami;

TEST(Orient, SignsAndBand) {
    EXPECT_EQ(orient({0, 0}, {1, 0}, {0, 1}), Orientation::Left);
    EXPECT_EQ(orient({0, 0}, {1, 0}, {0, -1}), Orientation::Right);
    EXPECT_EQ(orient({0, 0}, {1, 0}, {2, 0}), Orientation::Collinear);
    EXPECT_EQ(orient({0, 0}, {1, 0}, {0.5, 1e-12}), Orientation::Collinear);
    EXPECT_EQ(orient({0, 0}, {1, 0}, {0.5, 1e-6}), Orientation::Left);
}

TEST(SegIntersect, Kinds) {
    auto x = seg_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
    ASSERT_EQ(x.kind, Intersection::Kind::Point);
    EXPECT_FALSE(x.at_endpoint);
    EXPECT_NEAR(x.point.x, 1.0, 1e-15);
    EXPECT_NEAR(x.point.y, 1.0, 1e-15);

    x = seg_intersect({{0, 0}, {1, 0}}, {{1, 0}, {1, 1}});
    ASSERT_EQ(x.kind, Intersection::Kind::Point);
    EXPECT_TRUE(x.at_endpoint);

    x = seg_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
    ASSERT_EQ(x.kind, Intersection::Kind::Overlap);
    EXPECT_NEAR(x.overlap.a.x, 1.0, 1e-15);
    EXPECT_NEAR(x.overlap.b.x, 2.0, 1e-15);

    EXPECT_EQ(seg_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}).kind, Intersection::Kind::Empty);
    EXPECT_EQ(seg_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}).kind, Intersection::Kind::Empty);
}

TEST(Reflect, IsAnInvolutionFixingTheLine) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 200; ++i) {
        Line l = Line::through({u(rng), u(rng)}, {u(rng), u(rng)});
        Point2 x{u(rng), u(rng)};
        Point2 y = reflect(reflect(x, l), l);
        EXPECT_NEAR(dist(x, y), 0.0, 1e-12);
        Point2 on = l.origin + u(rng) * l.dir;
        EXPECT_NEAR(dist(reflect(on, l), on), 0.0, 1e-12);
        EXPECT_NEAR(l.side(reflect(x, l)), -l.side(x), 1e-12);
    }
}

TEST(Polygon, AreaCentroidContainment) {
    std::vector<Point2> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_DOUBLE_EQ(signed_area(sq), 4.0);
    Point2 c = centroid(sq);
    EXPECT_NEAR(c.x, 1.0, 1e-15);
    EXPECT_NEAR(c.y, 1.0, 1e-15);
    EXPECT_EQ(polygon_contains(sq, {1, 1}), Containment::Inside);
    EXPECT_EQ(polygon_contains(sq, {2, 1}), Containment::Boundary);
    EXPECT_EQ(polygon_contains(sq, {3, 1}), Containment::Outside);
    EXPECT_TRUE(is_convex_ccw(sq));
    std::vector<Point2> cw(sq.rbegin(), sq.rend());
    EXPECT_FALSE(is_convex_ccw(cw));
    std::vector<Point2> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    EXPECT_FALSE(is_simple(bowtie));
    EXPECT_THROW(polygon_contains(bowtie, {1, 0.5}), NonSimplePolygonError);
    std::vector<Point2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    EXPECT_TRUE(is_simple(ell));
    EXPECT_FALSE(is_convex_ccw(ell));
    EXPECT_DOUBLE_EQ(signed_area(ell), 3.0);
}

TEST(Angles, SweepAndRayHit) {
    EXPECT_NEAR(ccw_sweep({1, 0}, {0, 1}), kPi / 2, 1e-15);
    EXPECT_NEAR(ccw_sweep({0, 1}, {1, 0}), 3 * kPi / 2, 1e-15);
    std::vector<Point2> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    int edge = -1;
    double t = ray_polygon_hit({1, 1}, {1, 0}, sq, 0.0, &edge);
    EXPECT_NEAR(t, 1.0, 1e-15);
    EXPECT_EQ(edge, 1);
    EXPECT_LT(ray_polygon_hit({3, 3}, {1, 0}, sq, 0.0), 0.0);
}

TEST(Segments, DistanceAndOpenness) {
    Segment s{{0, 0}, {2, 0}};
    EXPECT_DOUBLE_EQ(point_segment_distance({1, 1}, s), 1.0);
    EXPECT_DOUBLE_EQ(point_segment_distance({3, 0}, s), 1.0);
    EXPECT_TRUE(on_segment({2, 0}, s));
    EXPECT_FALSE(in_open_segment({2, 0}, s));
    EXPECT_TRUE(in_open_segment({1, 0}, s));
}
