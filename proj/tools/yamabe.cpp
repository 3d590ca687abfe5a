#include <iostream>

#include "yamabe/cli/run.hpp"

int main(int argc, char** argv) { return yamabe::run(argc, argv, std::cout, std::cerr); }
