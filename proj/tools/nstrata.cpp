#include <iostream>

#include <nstrata/cli.hpp>

int main(int argc, char **argv)
{
    return nstrata::run_cli(argc, argv, std::cout, std::cerr);
}
