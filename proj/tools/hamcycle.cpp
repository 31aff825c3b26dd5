#include "hamcycle/cli.hpp"

int main(int argc, char** argv) { return hamcycle::cli::run(argc, argv); }
