#include "sdlab/cli.hpp"

int main(int argc, char** argv) { return sdlab::cli::cli_main(argc, argv); }
