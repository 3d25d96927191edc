#include "cli.hpp"

int main(int argc, char** argv) { return divlab::tools::run(argc, argv); }
