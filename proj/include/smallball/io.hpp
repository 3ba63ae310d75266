#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smallball/constants.hpp"
#include "smallball/estimator.hpp"

namespace smallball {

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trip-exact decimal (std::to_chars, 17 significant digits),
// locale-independent.
std::string format_double(double v);

// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view s);

// Hash of the canonical (key-sorted) JSON dump; stable under key reordering.
std::string config_hash(const nlohmann::json& params);

// $SMALLBALL_OUTPUT_DIR if set, else ".".
std::string default_output_dir();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// "t,value" CSV with '\n' endings and 17-digit doubles.
std::string path_csv(const std::vector<double>& t, const std::vector<double>& values);
void parse_path_csv(const std::string& content, std::vector<double>& t,
                    std::vector<double>& values);

// Per-epsilon table: epsilon,hits,p_hat,se,k_hat,k_lo,k_hi.
std::string table_csv(const SmallBallEstimate& est);

nlohmann::json to_json(const SmallBallEstimate& est);
nlohmann::json to_json(const ConstantsReport& rep);

// Written before outputs with status "incomplete", rewritten as "complete"
// once every output file is finalized.
struct RunManifest {
  std::string command;
  nlohmann::json parameters;  // full parameter set as resolved
  std::uint64_t master_seed = 0;
  std::string version = kVersion;
  std::string hash;  // config_hash(parameters)
  std::string status = "incomplete";
  std::string started_utc;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> outputs;
};

std::string utc_now_iso8601();
void write_manifest(const std::string& dir, const RunManifest& m);

}  // namespace smallball
