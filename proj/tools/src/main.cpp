#include <iostream>

#include "bentchain_cli/cli.hpp"

int main(int argc, char** argv) {
  return bentchain::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
