#include "gtv/cli.hpp"

int main(int argc, char** argv) { return gtv::run_main(argc, argv); }
