#include <iostream>

#include "chromaname_cli/cli_app.hpp"

int main(int argc, char** argv) {
    return chromaname::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
