#include "holoconv/cli.hpp"

int main(int argc, char** argv) { return holoconv::run_cli(argc, argv); }
