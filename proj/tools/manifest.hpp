#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace levmag::cli {

/// Provenance record written next to every run. The digest covers every
/// field except the wall-clock stamp, so identical inputs give identical
/// digests and identical output files.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> settings;
  std::map<std::string, std::string> versions;
  std::string wall_clock;

  [[nodiscard]] std::string digest() const;
  [[nodiscard]] std::string to_json() const;
};

/// Library versions compiled into the tool.
std::map<std::string, std::string> build_versions();

/// UTC time in ISO 8601.
std::string utc_now();

}  // namespace levmag::cli
