#include "cli.hpp"

int main(int argc, char** argv) { return phasekit::cli::main_entry(argc, argv); }
