#include <iostream>

#include "nlch/cli.hpp"

int main(int argc, char** argv) { return nlch::dispatch(argc, argv, std::cout, std::cerr); }
