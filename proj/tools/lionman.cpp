#include <string>
#include <vector>

#include "lionman/cli/app.hpp"

int main(int argc, char** argv) {
  return lionman::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
