#pragma once

// Two-plane photonic chip that realises psi = psi_plus + i psi_minus:
//
//   beam -> front splitter -> phase segmentation (opposite gradients)
//        -> upper lattice (AB, mass +beta) | lower lattice (BA, mass -beta)
//        -> fan-out (effective extra length) -> vertical couplers
//
// The upper output ports carry (psi_plus + i psi_minus) / sqrt(2) for a
// balanced coupler.

#include <optional>
#include <span>
#include <vector>

#include "majoranon/fields.hpp"
#include "majoranon/lattice.hpp"
#include "majoranon/observables.hpp"

namespace majoranon {

inline constexpr double kBalancedCouplerTheta = 0.78539816339744830962;  // pi/4

/// How the plane inputs are prepared.
enum class EncodingStage {
  segmented,  // one flat-phased beam, front splitter, j*pi/2 segmentation phases
  ideal,      // encoded psi_plus / psi_minus injected directly
};

struct DeviceSpec {
  BinaryLattice lattice_upper;
  BinaryLattice lattice_lower;
  double evolution_length_mm = 0.0;
  double fanout_extra_mm = 0.0;
  double coupler_theta = kBalancedCouplerTheta;  // kappa_c * L_c
  double segmentation_step_mm = 0.0;             // metadata only
  double input_waist_cells = 0.0;                // metadata only
  EncodingStage encoding = EncodingStage::segmented;

  /// Checks the pairing invariants (same K, kappa, beta; orderings AB/BA)
  /// and a positive effective length. Throws InvalidParameter.
  void validate() const;

  double effective_length_mm() const;
};

/// Upper lattice AB, lower lattice BA with common K, kappa, beta.
DeviceSpec make_device_spec(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                            double evolution_length_mm, double fanout_extra_mm = 0.0,
                            double coupler_theta = kBalancedCouplerTheta);

/// j * pi / 2 for j in 0..3.
double segmentation_phase(int j);

/// L_e + L_extra; both must be >= 0.
double effective_length(double evolution_length_mm, double fanout_extra_mm);

struct PlanePair {
  LatticeField upper;
  LatticeField lower;
};

/// Balanced single-input coupler: upper = input cos(pi/4), lower = i input sin(pi/4).
PlanePair front_splitter(const LatticeField& input);

/// Per site: (cos t up + i sin t low, i sin t up + cos t low).
PlanePair recombine(const LatticeField& upper, const LatticeField& lower, double theta);

/// Plane fields that the ideal encoding injects for a Majoranon spinor: the
/// plus-gradient encodings of psi_plus and psi_minus.
PlanePair encoded_planes(const SpinorField& psi0);

/// Result of realising encoded_planes() with the physical input stage.
struct SegmentedInput {
  LatticeField beam;              // real, non-negative amplitudes
  std::vector<int> upper_segments;  // j_k per site
  std::vector<int> lower_segments;
  PlanePair planes;
};

/// Finds the beam and per-site segment counts j_k that reproduce the target
/// plane fields after the front splitter. Throws InvalidParameter when the
/// targets need unequal plane intensities or phases off the pi/2 grid.
SegmentedInput segmented_input(const PlanePair& targets);

struct DeviceOutput {
  PlanePair ports;                    // after recombination
  std::vector<double> upper_intensity;  // |upper port|^2 per site
  SpinorIntensities decoded;          // upper ports, renormalized to unit sum when lit
  std::optional<double> pseudo_energy;  // unset when no light reaches the upper ports
  double total_intensity = 0.0;       // both planes, all ports
};

/// Evolves given plane inputs over the effective length and recombines.
DeviceOutput propagate_and_recombine(const DeviceSpec& spec, const PlanePair& inputs,
                                     std::optional<double> distance_mm = std::nullopt);

struct DeviceRun {
  DeviceOutput output;  // at spec.effective_length_mm()
  std::optional<SegmentedInput> input_stage;
  ObservableSeries series;  // one record per requested zeta (virtual devices of that length)
};

/// Full pipeline for a normalized initial Majoranon spinor with 2 * n cells =
/// K sites. series_zetas (strictly increasing) selects extra effective
/// lengths zeta / kappa at which pseudo-energy, centroid and width of the
/// decoded output are recorded.
DeviceRun simulate_device(const DeviceSpec& spec, const SpinorField& psi0,
                          std::span<const double> series_zetas = {}, unsigned threads = 1);

}  // namespace majoranon
