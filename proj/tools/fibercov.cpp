#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fibercov/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    fibercov::cli::Options opts;
    opts.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
    return fibercov::cli::run(args, std::cout, std::cerr, opts);
}
