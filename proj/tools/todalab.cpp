#include <iostream>

#include "todalab/harness/harness.hpp"

int main(int argc, char** argv) { return todalab::harness::main_entry(argc, argv, std::cout, std::cerr); }
