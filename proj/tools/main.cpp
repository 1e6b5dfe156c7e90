#include "cli.hpp"

int main(int argc, char** argv) { return netcrypt::run_cli(argc, argv); }
