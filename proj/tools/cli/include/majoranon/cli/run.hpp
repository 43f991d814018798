#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "majoranon/cli/config.hpp"
#include "majoranon/fields.hpp"

namespace majoranon::cli {

struct RunSummary {
  std::vector<std::filesystem::path> files;  // in the order they were written
  std::size_t samples = 0;
  std::optional<double> final_pseudo_energy;
  std::optional<double> final_rms_width;
};

/// Worker count from SIM_THREADS, or the hardware concurrency when unset.
/// Malformed values throw ConfigError.
unsigned threads_from_env();

/// Normalized Gaussian packet described by the config (psi_2 = 0).
SpinorField initial_spinor(const ExperimentConfig& cfg);

/// Evolves the configured model and writes the requested outputs to out_dir
/// (created if needed):
///   series.csv                          pseudo_energy and/or centroid_width
///   map_psi1.{csv,ppm}, map_psi2.{csv,ppm}   map
///   map_sites.{csv,ppm}                 map, lattice and device models
///   intensities_psi1.csv, intensities_psi2.csv   intensities at the measure samples
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                          unsigned threads = 1);

/// Writes compare.csv with the Majoranon and Dirac (+mu) pseudo-energy of the
/// configured packet at every sample.
RunSummary run_compare(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                       unsigned threads = 1);

}  // namespace majoranon::cli
