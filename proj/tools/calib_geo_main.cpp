#include "calibgeo/cli.hpp"

int main(int argc, char** argv) { return calibgeo::cli::run(argc, argv); }
