#include "rsaware/cli.hpp"

int main(int argc, char** argv) { return rsaware::run_cli(argc, argv); }
