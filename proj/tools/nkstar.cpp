#include "nkstar/cli.hpp"

int main(int argc, char** argv) { return nkstar::cli::run(argc, argv); }
