#include "ncfactor/cli.hpp"

int main(int argc, char** argv) { return ncfactor::run_cli(argc, argv); }
