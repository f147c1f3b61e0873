#include "proflow/cli.hpp"
int main(int argc, char** argv) { return proflow::run_cli(argc, argv); }
