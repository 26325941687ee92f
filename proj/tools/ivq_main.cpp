#include "ivq/cli/commands.hpp"

int main(int argc, char** argv) { return ivq::cli::run(argc, argv); }
