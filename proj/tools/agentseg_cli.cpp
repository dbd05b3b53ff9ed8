#include <iostream>

#include "agentseg/run.hpp"

int main(int argc, char** argv) {
    const auto parsed = agentseg::parse_run_config(argc, argv, std::cout, std::cerr);
    if (!parsed.config) return parsed.exit_code;
    return agentseg::run(*parsed.config, std::cout, std::cerr);
}
