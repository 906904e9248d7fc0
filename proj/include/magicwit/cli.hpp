#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace magicwit::cli {

constexpr const char* kVersion = "0.2.0";

// Exit codes: 0 success/inconclusive, 10 certified nonstabilizer, 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitCertified = 10;
constexpr int kExitInputError = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace magicwit::cli
