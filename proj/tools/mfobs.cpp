#include <iostream>

#include "mfobs/cli.hpp"

int main(int argc, char** argv) {
    return mfobs::cli_main(argc, argv, std::cout, std::cerr);
}
