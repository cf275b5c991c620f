#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kirigami/folding.hpp"
#include "kirigami/geodesic.hpp"
#include "kirigami/ordering.hpp"
#include "kirigami/sealing.hpp"

namespace kirigami {

enum class Stage { Geodesics = 0, Seal, Order, Fold, Verify };
const char* stage_name(Stage s);

struct PipelineOptions {
    double eps = 1e-9;
    bool skip_seal = false;
    bool timings = false;  // include wall-clock timings in the JSON export
    Stage last = Stage::Verify;
};

enum class Status { Ok, Obstruction, Error };

struct PipelineResult {
    KirigamiSpec input;           // after dropping isolated vertices
    std::vector<std::string> warnings;
    // normalization: x_internal = (x - center) * scale
    Point2 center;
    double scale = 1.0;

    std::optional<GeodesicSet> geodesics;            // before sealing
    std::optional<SealTrace> seal_trace;
    std::optional<MinimalityReport> minimality;
    std::optional<KirigamiSpec> sealed;
    std::optional<GeodesicSet> sealed_geodesics;
    std::optional<GeodesicChain> chain;
    std::optional<RegionDecomposition> decomposition;
    std::optional<Assembly> immersion;
    std::optional<ImmersionReport> verification;     // measured in internal (normalized) units

    std::vector<std::string> completed;  // stage names, in order
    std::vector<std::pair<std::string, double>> timings;  // seconds

    Status status = Status::Ok;
    std::string failed_stage;
    std::string message;
    std::vector<int> obstructing_trees;

    int exit_code() const;
};

KirigamiSpec parse_spec(const std::string& json_text);
KirigamiSpec load_spec(const std::string& path);
std::string spec_to_json(const KirigamiSpec& spec);

PipelineResult run(const KirigamiSpec& spec, const PipelineOptions& options = {});
PipelineResult run(const std::string& spec_path, const PipelineOptions& options = {});

std::string to_json(const PipelineResult& r, bool with_timings = false);
std::string to_svg(const PipelineResult& r, double pixels_per_unit = 100.0);

enum class ExportFormat { Json, Svg };
// Throws KirigamiError when the path cannot be written.
void export_result(const PipelineResult& r, ExportFormat format, const std::string& path, bool with_timings = false,
                   double pixels_per_unit = 100.0);

}  // namespace kirigami
