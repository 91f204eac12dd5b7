#include "wavemaplab/cli.hpp"

int main(int argc, char** argv) { return wml::run_cli(argc, argv); }
