#include "cscrack/cli.hpp"

int main(int argc, char** argv) { return cscrack::cli_main(argc, argv); }
