#include <string>
#include <vector>

#include "voltcast/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return voltcast::cli::run(args);
}
