#ifndef SPECIALLOCUS_CACHE_HPP
#define SPECIALLOCUS_CACHE_HPP

// Plain-text on-disk cache.  Files begin with the header line "format=1";
// writes go to a temporary file that is renamed into place, so readers see
// either the old file or the complete new one.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace speciallocus {

class CacheDir {
 public:
  explicit CacheDir(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& path() const { return dir_; }
  // Body lines (header stripped) or nullopt if absent.  A file with a
  // wrong header is treated as absent.
  std::optional<std::vector<std::string>> read(const std::string& name) const;
  void write(const std::string& name, const std::vector<std::string>& lines) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace speciallocus

#endif  // SPECIALLOCUS_CACHE_HPP
