#include "sphcode/cli.hpp"

int main(int argc, char** argv) { return sphcode::cli_dispatch(argc, argv); }
