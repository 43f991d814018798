#include "majoranon/presets.hpp"

#include "majoranon/errors.hpp"

namespace majoranon {

const ExperimentPreset& lowmass_preset() {
  static const ExperimentPreset preset{
      .name = "lowmass",
      .n_cells = 13,
      .kappa_per_mm = 0.064,
      .mu = 0.65,
      .sigma_cells = 1.1,
      .n0_cells = centred_n0(13),
      .p0 = 0.0,
      .measurement_zetas = {0.55, 4.4},
      .fabrication =
          {
              .pulse_duration_fs = 150.0,
              .pulse_energy_nj = 300.0,
              .writing_velocity_mm_per_min = 100.0,
              .velocity_modulation_mm_per_min = 6.0,
              .waveguide_separation_um = 18.5,
              .plane_separation_um = 45.0,
              .fanout_length_mm = 40.0,
              .fanout_separation_um = 40.0,
              .coupler_length_mm = 12.0,
              .segmentation_step_mm = 1.76,
              .beam_waist_um = 40.0,
          },
  };
  return preset;
}

const ExperimentPreset& highmass_preset() {
  static const ExperimentPreset preset{
      .name = "highmass",
      .n_cells = 15,
      .kappa_per_mm = 0.072,
      .mu = 1.2,
      .sigma_cells = 1.3,
      .n0_cells = centred_n0(15),
      .p0 = 0.0,
      .measurement_zetas = {0.9, 3.5},
      .fabrication =
          {
              .pulse_duration_fs = 120.0,
              .pulse_energy_nj = 260.0,
              .writing_velocity_mm_per_min = 90.0,
              .velocity_modulation_mm_per_min = 14.0,
              .waveguide_separation_um = 19.5,
              .plane_separation_um = 55.0,
              .fanout_length_mm = 46.0,
              .fanout_separation_um = 55.0,
              .coupler_length_mm = 22.0,
              .segmentation_step_mm = 1.85,
              .beam_waist_um = 50.0,
          },
  };
  return preset;
}

const ExperimentPreset* find_preset(std::string_view name) {
  if (name == "lowmass") return &lowmass_preset();
  if (name == "highmass") return &highmass_preset();
  return nullptr;
}

double centred_n0(std::size_t n_cells) { return (static_cast<double>(n_cells) + 1.0) / 2.0; }

SpinorField preset_initial_spinor(const ExperimentPreset& preset) {
  return gaussian_spinor(GridSpec::periodic(preset.n_cells),
                         {.n0 = preset.n0_cells, .sigma = preset.sigma_cells, .p0 = preset.p0});
}

DeviceSpec preset_device(const ExperimentPreset& preset, double zeta_eff) {
  if (!(zeta_eff > 0.0)) throw InvalidParameter("device effective length must be positive");
  DeviceSpec spec = make_device_spec(preset.n_sites(), preset.kappa_per_mm, preset.beta_per_mm(),
                                     zeta_eff / preset.kappa_per_mm);
  spec.segmentation_step_mm = preset.fabrication.segmentation_step_mm;
  spec.input_waist_cells = preset.sigma_cells;
  return spec;
}

}  // namespace majoranon
