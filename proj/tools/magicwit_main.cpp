#include "magicwit/cli.hpp"

int main(int argc, char** argv) { return magicwit::cli::run(argc, argv); }
