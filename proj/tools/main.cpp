#include "binomsum/cli.hpp"

int main(int argc, char** argv) { return binomsum::cli::run(argc, argv); }
