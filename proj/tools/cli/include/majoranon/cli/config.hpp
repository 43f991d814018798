#pragma once

// Experiment configuration for the `sim` front end.
//
// Settings come from three layers: a preset, an optional flat key = value
// file, and command-line flags. Later layers win; every value that replaces
// an earlier one is reported as a notice.

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "majoranon/lattice.hpp"
#include "majoranon/device.hpp"
#include "majoranon/series.hpp"

namespace majoranon::cli {

/// Malformed or inconsistent configuration. Carries the offending key and,
/// for file settings, the 1-based line number.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& message);
  /// For problems without a file line: missing keys, environment variables.
  ConfigError(std::string key, const std::string& origin, const std::string& message);

  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

/// File-system failure (missing config, unwritable output directory).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class PresetKind { lowmass, highmass, custom };
enum class Model { spinor, lattice, device };
enum class Colormap { gray, viridis };

struct OutputSet {
  bool pseudo_energy = false;
  bool intensities = false;
  bool map = false;
  bool centroid_width = false;

  friend bool operator==(const OutputSet&, const OutputSet&) = default;
};

struct ExperimentConfig {
  PresetKind preset = PresetKind::custom;
  Model model = Model::spinor;
  EvolverKind evolver = EvolverKind::majorana_composed;

  std::size_t cells = 0;
  double kappa_per_mm = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double n0 = 0.0;
  double p0 = 0.0;

  std::vector<double> zetas;    // series / map samples, strictly increasing
  std::vector<double> measure;  // snapshot samples for the intensities output
  OutputSet outputs;

  Colormap colormap = Colormap::viridis;
  double reference_step = 1e-3;
  LatticeMethod lattice_method = LatticeMethod::eigen;
  double coupler_theta = kBalancedCouplerTheta;
  EncodingStage encoding = EncodingStage::segmented;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// One raw key = value pair. line is 0 for command-line flags.
struct Setting {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Names of all accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

/// Parses flat key = value text. '#' starts a comment, blank lines are
/// skipped, section headers and unknown keys throw ConfigError.
std::vector<Setting> parse_config_text(const std::string& text);

/// Reads and parses a config file; a missing or unreadable file throws IoError.
std::vector<Setting> read_config_file(const std::filesystem::path& path);

/// Applies preset, file and flag layers (in that order) and validates the
/// result. Overrides are reported on `notices`.
ExperimentConfig resolve_config(const std::vector<Setting>& file_settings,
                                const std::vector<Setting>& flag_settings, std::ostream& notices);

/// Default sample range when none is configured: zeta in [0, 5], step 0.05.
inline constexpr double kDefaultZetaMax = 5.0;
inline constexpr double kDefaultZetaStep = 0.05;

std::string to_string(PresetKind p);
std::string to_string(Model m);
std::string to_string(EvolverKind e);

}  // namespace majoranon::cli
