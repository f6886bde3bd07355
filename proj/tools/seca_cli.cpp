#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seca/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"seca: entanglement-connection ansatz experiments"};
    app.require_subcommand(1, 1);

    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    for (const char* name : {"metrics", "vqe", "cut-verify", "plot"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON config file")->required();
        sub->add_option("--out", out, "output directory");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--threads", threads, "worker threads (default: SECA_THREADS or all cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : seca::cli::kExitConfig;
    }

    auto* sub = app.get_subcommands().front();
    seca::cli::Options opt;
    opt.out = out;
    if (sub->count("--seed") > 0) opt.seed = seed;
    opt.threads = threads;
    return seca::cli::run_command_file(sub->get_name(), config, opt, std::clog);
}
