#include "wlpower/cli.hpp"

int main(int argc, char** argv) {
    wlpower::cli::RunConfig config;
    if (auto code = wlpower::cli::parse_command_line(argc, argv, config)) return *code;
    return wlpower::cli::run(config);
}
