#include "exphodge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return exphodge::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
