#include "cli.hpp"

int main(int argc, char** argv) { return schatten::cli::run(argc, argv); }
