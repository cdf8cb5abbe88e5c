#include <iostream>
#include <string>
#include <vector>

#include "cyclalg/cli.hpp"

int main(int argc, char** argv) {
  return cyclalg::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
