#include "hybridcp/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Hybrid finite-domain / continuous constraint solver"};
    app.require_subcommand(1);

    std::string model;
    hybridcp::SolveOptions options;
    std::uint64_t node_limit = 0;
    std::uint64_t time_limit = 0;

    auto* solve = app.add_subcommand("solve", "Solve or minimize a JSON model");
    solve->add_option("model", model, "Model file (JSON)")->required();
    solve->add_flag("--json", options.json, "Also print a one-line JSON record");
    solve->add_flag("--all", options.all, "Enumerate every solution (satisfaction models)");
    auto* nodes = solve->add_option("--node-limit", node_limit, "Stop after N search nodes");
    auto* time = solve->add_option("--time-limit", time_limit, "Stop after MS milliseconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (nodes->count() > 0) {
        options.node_limit = node_limit;
    }
    if (time->count() > 0) {
        options.time_limit_ms = time_limit;
    }
    return hybridcp::run_solve(model, options, std::cout, std::cerr);
}
