#include <iostream>

#include "tempobridge/cli.hpp"

int main(int argc, char** argv) {
  return tempobridge::run_cli(argc, argv, std::cout, std::cerr);
}
