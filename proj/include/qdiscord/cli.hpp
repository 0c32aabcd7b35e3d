#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end: discord, scan, thermal, prefactors, continuity.
namespace qdiscord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// args excludes the program name. "--config path" reads "key = value" lines
// ('#' starts a comment) that act as "--key value" unless the same flag is
// given explicitly. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace qdiscord::cli
