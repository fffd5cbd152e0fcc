#include <iostream>

#include "outlierkit/cli/commands.hpp"

int main(int argc, char** argv) {
  return outlierkit::cli::run(argc, argv, std::cout, std::cerr);
}
