#include "hlrs/cli.hpp"

int main(int argc, char** argv) { return hlrs::cli::run(argc, argv); }
