#include <chenciner/cli.hpp>

int main(int argc, char** argv) { return chenciner::cli::run(argc, argv); }
