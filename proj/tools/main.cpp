#include "regula/cli.hpp"

int main(int argc, char** argv) { return regula::run_cli(argc, argv); }
