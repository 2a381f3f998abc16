#include <iostream>

#include "stechkin/cli.hpp"

int main(int argc, char** argv) {
  return stechkin::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
