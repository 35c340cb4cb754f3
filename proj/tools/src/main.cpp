#include <iostream>

#include "headnav/cli.hpp"

int main(int argc, char** argv) {
  return headnav::cli::run(argc, argv, std::cout, std::cerr);
}
