#include "almsq/cli/run.hpp"

int main(int argc, char** argv) { return almsq::cli::run(argc, argv); }
