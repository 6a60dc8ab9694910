#include <iostream>

#include "dntau/cli.hpp"

int main(int argc, char** argv) { return dntau::run_cli(argc, argv, std::cout, std::cerr); }
