#include "manifest.hpp"

#include <chrono>
#include <ctime>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "json.hpp"
#include "levmag/digest.hpp"

#ifndef LEVMAG_VERSION
#define LEVMAG_VERSION "unknown"
#endif

namespace levmag::cli {

namespace {

nlohmann::ordered_json body(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["config_digest"] = m.config_digest;
  j["seed"] = m.seed;
  j["outputs"] = m.outputs;
  j["settings"] = m.settings;
  j["versions"] = m.versions;
  return j;
}

}  // namespace

std::string RunManifest::digest() const { return sha256_hex(body(*this).dump()); }

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j = body(*this);
  j["digest"] = digest();
  j["wall_clock"] = wall_clock;
  return j.dump(2) + "\n";
}

std::map<std::string, std::string> build_versions() {
  return {
      {"levmag", LEVMAG_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                    std::to_string(BOOST_VERSION % 100)},
      {"compiler", __VERSION__},
  };
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace levmag::cli
