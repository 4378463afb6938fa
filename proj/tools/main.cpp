#include <iostream>
#include <string>
#include <vector>

#include "kwayneg/cli/commands.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const kwayneg::cli::CommandOutput result = kwayneg::cli::run(args);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
