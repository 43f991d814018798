#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "majoranon/device.hpp"
#include "majoranon/fields.hpp"

namespace majoranon {

/// Fabrication parameters of a sample. Carried for documentation and output
/// metadata; no part of the simulation depends on them.
struct FabricationRecord {
  double pulse_duration_fs;
  double pulse_energy_nj;
  double writing_velocity_mm_per_min;
  double velocity_modulation_mm_per_min;  // +- between sublattices
  double waveguide_separation_um;
  double plane_separation_um;
  double fanout_length_mm;
  double fanout_separation_um;
  double coupler_length_mm;
  double segmentation_step_mm;
  double beam_waist_um;
};

inline constexpr double kDeviceLengthMm = 150.0;
inline constexpr double kWavelengthNm = 633.0;
inline constexpr double kSegmentationPeriodUm = 40.0;

struct ExperimentPreset {
  std::string name;
  std::size_t n_cells;  // spinor cells; the lattice has 2 * n_cells sites
  double kappa_per_mm;
  double mu;            // beta / kappa
  double sigma_cells;
  double n0_cells;
  double p0 = 0.0;
  std::vector<double> measurement_zetas;
  FabricationRecord fabrication;

  std::size_t n_sites() const { return 2 * n_cells; }
  double beta_per_mm() const { return mu * kappa_per_mm; }
};

/// 26 guides, kappa = 0.064 / mm, beta = 0.65 kappa, sigma = 1.1.
const ExperimentPreset& lowmass_preset();
/// 30 guides, kappa = 0.072 / mm, beta = 1.2 kappa, sigma = 1.3.
const ExperimentPreset& highmass_preset();

/// nullptr for unknown names.
const ExperimentPreset* find_preset(std::string_view name);

/// Packet centre used by the presets: (N + 1) / 2, the middle of cells 1..N.
double centred_n0(std::size_t n_cells);

/// Normalized Gaussian with psi_2 = 0 and zero mean momentum.
SpinorField preset_initial_spinor(const ExperimentPreset& preset);

/// Two-plane device whose effective length is zeta_eff / kappa. The fan-out
/// extension is not reported per sample, so the whole length is assigned to
/// L_e and the fan-out term is zero.
DeviceSpec preset_device(const ExperimentPreset& preset, double zeta_eff);

}  // namespace majoranon
