#include "curlwave/commands.hpp"

int main(int argc, char** argv) { return curlwave::run_cli(argc, argv); }
