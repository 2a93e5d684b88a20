#include "soq_cli/cli.hpp"

int main(int argc, char** argv) { return soq::cli::run(argc, argv); }
