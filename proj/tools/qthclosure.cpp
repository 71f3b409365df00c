#include <iostream>

#include "qth/cli.hpp"

int main(int argc, char** argv) {
  return qth::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
