#include <iostream>
#include <string>
#include <vector>

#include "localmass/campaign.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return localmass::run_cli(args, std::cout, std::cerr);
}
