#include "loopwalk/cli.hpp"

int main(int argc, char** argv) { return loopwalk::cli::run(argc, argv); }
