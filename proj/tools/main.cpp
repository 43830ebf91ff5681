#include "rmtlab/cli.hpp"

int main(int argc, char** argv) { return rmtlab::cli::run(argc, argv); }
