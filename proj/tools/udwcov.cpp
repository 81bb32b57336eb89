#include <iostream>

#include "udw/cli/cli.hpp"

int main(int argc, char** argv) {
  return udw::cli::run(argc, argv, std::cout, std::cerr);
}
