#pragma once

#include <string>
#include <vector>

namespace ncfactor {

// Exit codes: 0 success (pit: zero polynomial), 1 pit nonzero, 2 usage or
// input errors, 3 algorithmic failure (message carries the seed).
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without the program name

}  // namespace ncfactor
