#include <iostream>

#include "lexlearn/cli.hpp"

int main(int argc, char** argv) {
  return lexlearn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
