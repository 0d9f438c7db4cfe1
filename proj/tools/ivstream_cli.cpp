#include "ivstream/cli.hpp"

int main(int argc, char** argv) { return ivstream::cli_main(argc, argv); }
