#include "mgk/cli.hpp"

int main(int argc, char** argv) { return mgk::cli_main(argc, argv); }
