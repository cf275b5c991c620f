#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <regex>

#include "fixtures.hpp"
#include "kirigami/pipeline.hpp"

using namespace kirigami;
using kirigami::testing::data_path;
using kirigami::testing::fixture;
using nlohmann::json;

namespace {

int count_matches(const std::string& s, const std::string& pattern) {
    std::regex re(pattern);
    return int(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

KirigamiSpec scaled(const KirigamiSpec& s, double k, Point2 t) {
    KirigamiSpec o = s;
    auto f = [&](Point2 x) { return k * x + t; };
    for (auto& v : o.domain) v = f(v);
    for (auto& v : o.vertices) v = f(v);
    o.p = f(o.p);
    o.q = f(o.q);
    return o;
}

}  // namespace

TEST(Pipeline, VerticalCutRunsClean) {
    PipelineResult r = run(data_path("vertical_cut.json"));
    ASSERT_EQ(r.status, Status::Ok) << r.message;
    EXPECT_EQ(r.exit_code(), 0);
    ASSERT_TRUE(r.geodesics);
    EXPECT_EQ(r.geodesics->geodesics.size(), 2u);
    EXPECT_NEAR(r.geodesics->distance, 2 * std::sqrt(2.0), 1e-9);
    EXPECT_EQ(r.completed, (std::vector<std::string>{"geodesics", "seal", "order", "fold", "verify"}));
    ASSERT_TRUE(r.verification);
    EXPECT_TRUE(r.verification->ok());
}

TEST(Pipeline, CutFreeDomain) {
    PipelineResult r = run(data_path("cut_free.json"));
    ASSERT_EQ(r.status, Status::Ok) << r.message;
    EXPECT_EQ(r.geodesics->geodesics.size(), 1u);
    EXPECT_NEAR(r.geodesics->distance, 1.0, 1e-12);
}

TEST(Pipeline, ExteriorTreeIsAnObstruction) {
    PipelineOptions opt;
    opt.skip_seal = true;
    PipelineResult r = run(data_path("obstruction_c03.json"), opt);
    EXPECT_EQ(r.status, Status::Obstruction);
    EXPECT_EQ(r.exit_code(), 2);
    EXPECT_EQ(r.failed_stage, "order");
    EXPECT_FALSE(r.obstructing_trees.empty());
    EXPECT_EQ(r.geodesics->geodesics.size(), 2u);
    EXPECT_NEAR(r.geodesics->distance, 0.3 + 1 + 1 / std::sqrt(2.0), 1e-7);
    json j = json::parse(to_json(r));
    EXPECT_EQ(j["status"], "obstruction");
    EXPECT_EQ(j["exit_code"], 2);
    EXPECT_TRUE(j["stages"]["decomposition"].is_null());
    EXPECT_TRUE(j["stages"]["fold_pattern"].is_null());
    EXPECT_FALSE(j["diagnostic"]["trees"].empty());
}

TEST(Pipeline, SealedObstructionFixtureFailsInFolding) {
    // sealing leaves a stub of the exterior tree inside a region with p interior
    PipelineResult r = run(data_path("obstruction_c03.json"));
    EXPECT_NE(r.status, Status::Ok);
    EXPECT_NE(r.exit_code(), 0);
    EXPECT_NEAR(r.geodesics->distance, 0.3 + 1 + 1 / std::sqrt(2.0), 1e-7);
}

TEST(Pipeline, JsonIsDeterministic) {
    for (auto name : {"vertical_cut.json", "three_geodesics.json", "two_cuts.json"}) {
        std::string a = to_json(run(data_path(name)));
        std::string b = to_json(run(data_path(name)));
        EXPECT_EQ(a, b) << name;
        json j = json::parse(a);
        for (auto key : {"geodesics", "seal_trace", "chain", "decomposition", "fold_pattern", "verification"})
            EXPECT_TRUE(j["stages"].contains(key)) << key;
        EXPECT_FALSE(j.contains("timings"));
    }
    json t = json::parse(to_json(run(data_path("vertical_cut.json")), true));
    EXPECT_TRUE(t.contains("timings"));
}

TEST(Pipeline, StopsAfterRequestedStage) {
    PipelineOptions opt;
    opt.last = Stage::Seal;
    PipelineResult r = run(data_path("three_geodesics.json"), opt);
    EXPECT_EQ(r.status, Status::Ok);
    EXPECT_EQ(r.completed.size(), 2u);
    json j = json::parse(to_json(r));
    EXPECT_FALSE(j["stages"]["seal_trace"].is_null());
    EXPECT_TRUE(j["stages"]["chain"].is_null());
    EXPECT_TRUE(j["stages"]["verification"].is_null());
}

TEST(Pipeline, SvgHasGeodesicsCutsAndCreases) {
    PipelineResult r = run(data_path("vertical_cut.json"));
    std::string svg = to_svg(r);
    EXPECT_EQ(count_matches(svg, "class=\"geodesic\""), 2);
    EXPECT_EQ(count_matches(svg, "class=\"cut\""), 1);
    EXPECT_GE(count_matches(svg, "stroke-dasharray"), 2);
    EXPECT_EQ(count_matches(svg, "class=\"domain\""), 1);
}

TEST(Pipeline, NormalizationRoundTrips) {
    KirigamiSpec base = fixture("three_geodesics.json");
    PipelineResult r0 = run(base);
    ASSERT_EQ(r0.status, Status::Ok) << r0.message;
    for (double k : {0.01, 50.0}) {
        KirigamiSpec s = scaled(base, k, {3.0, -7.0});
        PipelineResult r = run(s);
        ASSERT_EQ(r.status, Status::Ok) << k << ": " << r.message;
        EXPECT_NEAR(r.geodesics->distance, k * r0.geodesics->distance, 1e-9 * k);
        ASSERT_EQ(r.geodesics->geodesics.size(), r0.geodesics->geodesics.size());
        // u(p) sits at the origin of the rectified segment in input units
        for (auto x : r.immersion->u.images(s.p, 1e-9 * k)) EXPECT_LT(norm(x), 1e-7 * k);
        for (auto x : r.immersion->u.images(s.q, 1e-9 * k))
            EXPECT_NEAR(dist(x, {r.geodesics->distance, 0}), 0.0, 1e-7 * k);
    }
}

TEST(Pipeline, BadInputIsReported) {
    EXPECT_THROW(parse_spec("{"), ValidationError);
    EXPECT_THROW(parse_spec(R"({"domain": [[0,0],[1,0],[1,1]]})"), ValidationError);
    EXPECT_THROW(parse_spec(R"({"domain": [[0,0],[1,0],[1,1]], "vertices": [], "edges": [[0]], "p": [0,0], "q": [1,0]})"),
                 ValidationError);
    PipelineResult r = run(std::string("/nonexistent/spec.json"));
    EXPECT_EQ(r.status, Status::Error);
    EXPECT_EQ(r.exit_code(), 1);

    KirigamiSpec bad = fixture("vertical_cut.json");
    bad.p = bad.vertices[0];
    PipelineResult rb = run(bad);
    EXPECT_EQ(rb.status, Status::Error);
    EXPECT_EQ(rb.failed_stage, "input");
}

TEST(Pipeline, SpecRoundTripsThroughJson) {
    KirigamiSpec s = fixture("three_geodesics.json");
    KirigamiSpec t = parse_spec(spec_to_json(s));
    EXPECT_EQ(t.vertices.size(), s.vertices.size());
    EXPECT_EQ(t.edges, s.edges);
    EXPECT_EQ(t.p, s.p);
    EXPECT_EQ(t.q, s.q);
}

TEST(Pipeline, ExportWritesFiles) {
    PipelineResult r = run(data_path("vertical_cut.json"));
    auto dir = std::filesystem::temp_directory_path();
    auto jp = (dir / "kirigami_test_export.json").string();
    auto sp = (dir / "kirigami_test_export.svg").string();
    export_result(r, ExportFormat::Json, jp);
    export_result(r, ExportFormat::Svg, sp);
    std::ifstream in(jp);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(json::parse(text), json::parse(to_json(r)));
    EXPECT_GT(std::filesystem::file_size(sp), 0u);
    std::filesystem::remove(jp);
    std::filesystem::remove(sp);
    EXPECT_THROW(export_result(r, ExportFormat::Json, "/nonexistent/dir/out.json"), KirigamiError);
}
