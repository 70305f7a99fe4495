#ifndef TSFSB_CLI_HPP
#define TSFSB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tsfsb::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kIoError = 2 };

/// Entry point behind the `tsfsb` executable. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a over the subcommand and its non-path parameters, so outputs
/// from runs that differ only in file locations or thread count carry the
/// same provenance.
std::uint64_t config_hash(const std::string& subcommand,
                          std::vector<std::pair<std::string, std::string>> params);

}  // namespace tsfsb::cli

#endif  // TSFSB_CLI_HPP
