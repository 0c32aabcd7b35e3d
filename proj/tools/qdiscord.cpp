#include "qdiscord/cli.hpp"

int main(int argc, char** argv) { return qdiscord::cli::main(argc, argv); }
