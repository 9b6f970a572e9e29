#include "rossby/cli.hpp"

int main(int argc, char** argv) { return rossby::cli::dispatch(argc, argv); }
