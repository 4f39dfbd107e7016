#include "henon4/cli.hpp"

int main(int argc, char** argv) { return henon4::cli::main_entry(argc, argv); }
