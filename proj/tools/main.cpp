#include "flatkb/workbench/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return flatkb::workbench::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
