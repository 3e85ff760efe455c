#include "gbc/cli.hpp"

int main(int argc, char** argv) { return gbc::cli::main(argc, argv); }
