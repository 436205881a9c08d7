#ifndef SPECIALLOCUS_CLI_HPP
#define SPECIALLOCUS_CLI_HPP

// Command-line front end: configuration, subcommand dispatch, JSON/CSV output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace speciallocus {

struct Config {
  long precision_bits = 256;
  unsigned M_max = 20;
  std::uint64_t search_cap = 1000000;
  std::uint64_t enumeration_budget = 10000;
  std::filesystem::path cache_dir = "./cache";
  std::uint64_t seed = 1;

  // DomainError unless every numeric field is positive.
  void validate() const;
};

// Defaults, with SPECIALLOCUS_CACHE overriding cache_dir when set.
Config default_config();

// Exit status: 0 ok, 1 domain/validation error, 2 resource error
// (including precision and not-found), 64 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_CLI_HPP
