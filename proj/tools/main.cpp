#include <iostream>

#include "pathtree/cli.hpp"

int main(int argc, char** argv) {
  return pathtree::cli::run(argc, argv, std::cout, std::cerr);
}
