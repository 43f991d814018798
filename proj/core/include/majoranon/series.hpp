#pragma once

// Sampling an evolution at many values of zeta: pseudo-energy curves and
// intensity evolution maps.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "majoranon/fields.hpp"
#include "majoranon/lattice.hpp"
#include "majoranon/observables.hpp"

namespace majoranon {

enum class EvolverKind {
  dirac_plus,
  dirac_minus,
  majorana_composed,
  majorana_reference,
  lattice_plus,   // encode (gradient plus) -> AB lattice -> decode
  lattice_minus,  // same with the BA lattice
};

/// How to advance a spinor on n_cells cells. Spinor evolvers use a periodic
/// grid; lattice evolvers use 2 * n_cells sites with kappa = 1, so their
/// distance equals zeta.
struct Evolver {
  EvolverKind kind = EvolverKind::majorana_composed;
  double mu = 0.0;
  std::size_t n_cells = 2;
  double reference_step = 1e-3;
  LatticeMethod lattice_method = LatticeMethod::eigen;
};

/// States at every zeta (non-decreasing). Independent samples are spread over
/// `threads` workers; the result does not depend on the worker count.
std::vector<SpinorField> evolve_samples(const Evolver& evolver, const SpinorField& psi0,
                                        std::span<const double> zetas, unsigned threads = 1);

/// Pseudo-energy at each zeta (strictly increasing, non-empty).
ObservableSeries pseudo_energy_series(const Evolver& evolver, const SpinorField& psi0,
                                      std::span<const double> zetas, unsigned threads = 1,
                                      std::optional<double> kappa_per_mm = std::nullopt);

/// Pseudo-energy, centroid and rms width at each zeta.
ObservableSeries spinor_observable_series(const Evolver& evolver, const SpinorField& psi0,
                                          std::span<const double> zetas, unsigned threads = 1,
                                          std::optional<double> kappa_per_mm = std::nullopt);

/// Component intensity evolution: row r holds |psi_c,n(zeta_r)|^2.
struct IntensityMap {
  std::vector<double> zeta;
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;
};

IntensityMap intensity_map(const Evolver& evolver, const SpinorField& psi0,
                           std::span<const double> zetas, unsigned threads = 1);

/// Site intensity evolution of a lattice (rows = distances in mm).
Eigen::MatrixXd lattice_intensity_map(const BinaryLattice& lattice, const LatticeField& f0,
                                      std::span<const double> distances_mm, unsigned threads = 1);

/// Evenly spaced samples i * step for i = 0, 1, ... while i * step <= max
/// (with 1e-9 relative slack, so max itself is included when it is a multiple
/// of step). Throws InvalidParameter for non-positive step or negative max.
std::vector<double> sample_range(double max, double step);

}  // namespace majoranon
