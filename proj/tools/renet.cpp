#include "renet/cli.hpp"

int main(int argc, char** argv) { return renet::cli_main(argc, argv); }
