#include <iostream>

#include "alder/cli/app.hpp"

int main(int argc, char** argv) { return alder::cli::run(argc, argv, std::cout, std::cerr); }
