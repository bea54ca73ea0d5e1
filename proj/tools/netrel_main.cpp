#include "netrel/cli.hpp"

int main(int argc, char** argv) { return netrel::cli::dispatch(argc, argv); }
