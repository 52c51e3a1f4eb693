#include <iostream>

#include "lvsim/cli.hpp"

int main(int argc, char **argv) {
  return lvsim::cli::run(argc, argv, std::cout, std::cerr);
}
