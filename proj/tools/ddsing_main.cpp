#include "ddsing/cli.hpp"

int main(int argc, char** argv) { return ddsing::run_cli(argc, argv); }
