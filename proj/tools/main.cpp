#include "corpusforge/cli.hpp"

int main(int argc, char** argv) { return corpusforge::run_cli(argc, argv); }
