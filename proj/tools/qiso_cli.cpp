#include "qiso/cli.hpp"

int main(int argc, char** argv) { return qiso::cli::run(argc, argv); }
