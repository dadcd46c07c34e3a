#include <iostream>

#include "geobi/cli.hpp"

int main(int argc, char** argv) {
    return geobi::cli::dispatch(argc, argv, std::cout, std::cerr);
}
