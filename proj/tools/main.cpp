#include <iostream>

#include "pqe/cli.hpp"

int main(int argc, char** argv) {
  return pqe::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
