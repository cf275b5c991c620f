#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "kirigami/pipeline.hpp"

using namespace kirigami;

int main(int argc, char** argv) {
    CLI::App app{"Geodesics in slit domains and flat-folded immersions that straighten them"};
    app.require_subcommand(1, 1);

    std::string spec_path, json_out, svg_out;
    double eps = 1e-9;
    double ppu = 100.0;
    bool skip_seal = false, timings = false;

    const std::map<std::string, std::pair<Stage, std::string>> commands = {
        {"geodesics", {Stage::Geodesics, "Distance and all geodesics from p to q"}},
        {"seal", {Stage::Seal, "Shrink cuts while the distance is unchanged"}},
        {"order", {Stage::Order, "Order the geodesics and decompose the domain"}},
        {"fold", {Stage::Fold, "Build the folded immersion"}},
        {"verify", {Stage::Verify, "Build and verify the folded immersion"}},
        {"run", {Stage::Verify, "Full pipeline"}},
    };
    for (auto& [name, info] : commands) {
        CLI::App* sub = app.add_subcommand(name, info.second);
        sub->add_option("--spec", spec_path, "Input spec (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--eps", eps, "Orientation tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--json", json_out, "Write the result document here (default: stdout)");
        sub->add_option("--svg", svg_out, "Write an SVG drawing here");
        sub->add_option("--scale", ppu, "SVG pixels per unit")->check(CLI::PositiveNumber);
        sub->add_flag("--skip-seal", skip_seal, "Use the cuts as given");
        sub->add_flag("--timings", timings, "Include stage timings in the JSON");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    PipelineOptions opt;
    opt.eps = eps;
    opt.skip_seal = skip_seal;
    opt.timings = timings;
    opt.last = commands.at(name).first;

    PipelineResult r = run(spec_path, opt);
    if (timings)
        for (auto& [stage, sec] : r.timings) std::cerr << "timing " << stage << " " << sec << " s\n";
    for (auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (r.status != Status::Ok) std::cerr << r.failed_stage << ": " << r.message << "\n";
    try {
        if (json_out.empty())
            std::cout << to_json(r, timings);
        else
            export_result(r, ExportFormat::Json, json_out, timings);
        if (!svg_out.empty()) export_result(r, ExportFormat::Svg, svg_out, false, ppu);
    } catch (const std::exception& e) {
        std::cerr << "export: " << e.what() << "\n";
        return 1;
    }
    return r.exit_code();
}
