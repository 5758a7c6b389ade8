#include "partition_command.hpp"

int main(int argc, char** argv) { return relaxpart::cli::main(argc, argv); }
