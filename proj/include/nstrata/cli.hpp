#ifndef NSTRATA_CLI_HPP
#define NSTRATA_CLI_HPP

#include <iosfwd>

namespace nstrata
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the command-line tool, with the streams made explicit so
// tests can capture output.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace nstrata

#endif
