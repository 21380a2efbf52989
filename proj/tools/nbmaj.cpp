#include "nbmaj/cli.hpp"

int main(int argc, char** argv) { return nbmaj::cli::run(argc, argv); }
