// Command-line front end: subcommand dispatch, file I/O, error mapping.
#pragma once

#include <string>
#include <vector>

namespace glstab::cli {

int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace glstab::cli
