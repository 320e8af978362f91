#include <iostream>

#include "delreal/cli.hpp"

int main(int argc, char** argv) {
  return delreal::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
