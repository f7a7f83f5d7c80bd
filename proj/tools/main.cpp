#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
    using ballcover::cli::RunConfig;
    CLI::App app{"Covering selections, union perimeters and maximal-function checks"};
    app.set_version_flag("--version", ballcover::cli::kVersion);

    std::string command;
    std::string config_path;
    app.add_option("command", command, "generate | select | measure | check | rate | maxfn")->required();
    app.add_option("--config", config_path, "key=value file; flags override its entries");

    std::map<std::string, std::string> flags;
    for (const auto& key : ballcover::cli::known_keys()) {
        app.add_option("--" + key, flags[key]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    RunConfig cfg;
    cfg.command = command;
    try {
        if (!config_path.empty()) {
            ballcover::cli::load_config_file(config_path, cfg);
        }
        for (const auto& [key, value] : flags) {
            if (app.count("--" + key) > 0) {
                cfg.set(key, value);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return ballcover::cli::run(cfg, std::cout, std::cerr);
}
