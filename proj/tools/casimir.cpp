#include <iostream>

#include "casimir/cli/app.hpp"

int main(int argc, char** argv)
{
    return casimir::cli::run_command_line(argc, argv, std::cout, std::cerr);
}
