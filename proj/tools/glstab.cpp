#include "glstab/cli.hpp"

int main(int argc, char** argv) { return glstab::cli::run(argc, argv); }
