// muskat_cli.cpp — entry point for the muskat solver suite.

#include <string>
#include <vector>

#include "muskat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return muskat::run_command(args);
}
