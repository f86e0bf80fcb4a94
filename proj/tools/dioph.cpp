#include "dioph/cli.hpp"

int main(int argc, char** argv) { return dioph::cli::main_entry(argc, argv); }
