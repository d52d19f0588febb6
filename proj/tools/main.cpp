#include "cli.hpp"

int main(int argc, char** argv) { return netres::cli::run(argc, argv); }
