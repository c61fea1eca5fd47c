#include <iostream>

#include "esa/commands.h"

int main(int argc, char** argv) {
  return esa::RunCli(argc, argv, std::cout, std::cerr);
}
