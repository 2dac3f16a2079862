#include "qef/cli.hpp"

int main(int argc, char** argv) { return qef::cli::run(argc, argv); }
