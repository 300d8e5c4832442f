#include "clifftwist/cli.hpp"

int main(int argc, char** argv) { return clifftwist::run_cli(argc, argv); }
