#include "qtheta/cli.hpp"

int main(int argc, char** argv) { return qtheta::run_cli(argc, argv); }
