#include "colossal/cli.hpp"

int main(int argc, char** argv) { return colossal::cli::run(argc, argv); }
