#include "evt/cli.hpp"

int main(int argc, char** argv) { return evt::run_cli(argc, argv); }
