#include "speciallocus/cache.hpp"

#include <fstream>

#include <unistd.h>

#include "speciallocus/errors.hpp"

namespace speciallocus {

namespace {
constexpr const char* kHeader = "format=1";
}

std::optional<std::vector<std::string>> CacheDir::read(const std::string& name) const {
  std::ifstream in(dir_ / name);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) return std::nullopt;
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void CacheDir::write(const std::string& name, const std::vector<std::string>& lines) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ResourceError("cannot create cache directory " + dir_.string() + ": " + ec.message());
  auto tmp = dir_ / (name + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out << kHeader << '\n';
    for (const auto& l : lines) out << l << '\n';
    if (!out.flush()) throw ResourceError("short write on " + tmp.string());
  }
  std::filesystem::rename(tmp, dir_ / name, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ResourceError("cannot publish cache file " + name + ": " + ec.message());
  }
}

}  // namespace speciallocus
