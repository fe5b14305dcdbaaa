#include <iostream>

#include "arithdyn/cli.hpp"

int main(int argc, char** argv)
{
    return arithdyn::run_cli(argc, argv, std::cout, std::cerr);
}
