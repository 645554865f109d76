#include <iostream>

#include "cancermatch/cli_io.hpp"

int main(int argc, char** argv) {
    return cancermatch::cli_main(argc, argv, std::cout, std::cerr);
}
