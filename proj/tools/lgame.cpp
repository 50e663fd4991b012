#include <iostream>

#include "lgame/cli.hpp"

int main(int argc, char** argv) {
  return lgame::cli::dispatch(argc, argv, std::cin, std::cout, std::cerr);
}
