#pragma once

// Spinor-level dynamics in dimensionless units: mass mu = beta / kappa,
// evolution coordinate zeta = kappa * Z.
//
//   Dirac     i d_zeta psi = sigma_x p psi + s mu sigma_z psi,  s = +-1
//   Majorana  d_zeta psi   = -i sigma_x p psi - mu sigma_y conj(psi)
//
// On the discrete grid p is the spectral momentum operator built from the
// periodic momenta returned by momentum_grid().

#include <span>
#include <vector>

#include <Eigen/Core>

#include "majoranon/fields.hpp"

namespace majoranon {

struct DimensionlessParams {
  double mu = 0.0;
  double zeta = 0.0;

  /// Throws InvalidParameter unless both are finite and non-negative.
  void validate() const;
};

enum class MassSign { plus, minus };

inline double sign_value(MassSign s) { return s == MassSign::plus ? 1.0 : -1.0; }

/// psi_c = -i sigma_z sigma_y conj(psi), i.e. (psi_1, psi_2) -> (-conj(psi_2), -conj(psi_1)).
SpinorField charge_conjugate(const SpinorField& psi);

struct MajoranonParts {
  SpinorField plus;   // (psi + psi_c) / 2
  SpinorField minus;  // (psi - psi_c) / (2i)
};

/// Splits psi = psi_plus + i psi_minus into charge-conjugation invariant parts.
MajoranonParts decompose_majoranon(const SpinorField& psi);

/// psi_plus + i psi_minus. Throws ShapeError on size mismatch.
SpinorField compose_majoranon(const SpinorField& psi_plus, const SpinorField& psi_minus);

struct EnergyPair {
  double plus;
  double minus;
};

/// +-sqrt(q^2 + mu^2)
EnergyPair dispersion(double mu, double q);

/// Periodic momenta in DFT storage order: q_j = 2 pi j / N for
/// j = 0..ceil(N/2)-1 followed by the negative branch. For even N the unpaired
/// Nyquist bin carries q = 0 so the discrete momentum operator stays odd under
/// complex conjugation (p* = -p), which charge conjugation symmetry relies on.
std::vector<double> momentum_grid(std::size_t n_cells);

/// Real antisymmetric matrix D with p = -i D on the periodic grid.
Eigen::MatrixXd spectral_derivative_matrix(std::size_t n_cells);

/// Exact plane-wave propagator for one mass sign. The input spectrum is
/// computed once, so repeated at() calls cost one 2x2 product per mode plus an
/// inverse transform. at() is const and safe to call concurrently.
class DiracPropagator {
 public:
  DiracPropagator(const SpinorField& psi, MassSign sign, double mu, const GridSpec& grid);

  SpinorField at(double zeta) const;

 private:
  double mass_;  // s * mu
  std::vector<double> momenta_;
  ComplexVector spectrum1_;
  ComplexVector spectrum2_;
};

/// Throws UnsupportedBoundary for non-periodic grids, ShapeError if psi does
/// not live on the grid.
SpinorField dirac_evolve(const SpinorField& psi, MassSign sign, const DimensionlessParams& params,
                         const GridSpec& grid);

/// decompose -> Dirac(+mu) on psi_plus, Dirac(-mu) on psi_minus -> compose.
class MajoranonPropagator {
 public:
  MajoranonPropagator(const SpinorField& psi, double mu, const GridSpec& grid);

  SpinorField at(double zeta) const;

 private:
  MajoranonPropagator(const MajoranonParts& parts, double mu, const GridSpec& grid);

  DiracPropagator plus_;
  DiracPropagator minus_;
};

SpinorField majorana_evolve_composed(const SpinorField& psi, const DimensionlessParams& params,
                                     const GridSpec& grid);

/// Direct integration of the Majorana equation. Amplitudes are split into real
/// and imaginary parts, turning the conjugation into a real-linear map on a
/// 4N-dimensional system that is advanced with classical RK4 at a fixed step
/// no larger than max_step.
SpinorField majorana_evolve_reference(const SpinorField& psi, const DimensionlessParams& params,
                                      const GridSpec& grid, double max_step);

/// Same integrator, checkpointed: returns the state at every zeta in zetas
/// (non-decreasing, >= 0) from a single pass.
std::vector<SpinorField> majorana_evolve_reference(const SpinorField& psi, double mu,
                                                   std::span<const double> zetas,
                                                   const GridSpec& grid, double max_step);

}  // namespace majoranon
