#include <iostream>

#include "proxknap/cli.hpp"

int main(int argc, char** argv) {
  return proxknap::cli::run(argc, argv, std::cout, std::cerr);
}
