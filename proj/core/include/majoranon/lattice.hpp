#pragma once

// Coupled-mode dynamics of a binary waveguide array,
//
//   i dZ a_k = H a_k,   H = -(diag(beta_k) + kappa * (nearest-neighbour hopping)),
//
// with open boundaries, and the mapping between lattice amplitudes and
// two-component spinors: psi_1,n lives on site 2n-1, psi_2,n on site 2n, and
// every site carries an extra phase exp(+-i k pi/2).
//
// Gauge: sublattice A is the set of even sites. With ordering AB (A at +beta)
// and gradient plus, the decoded spinor obeys the Dirac equation with mass
// +beta/kappa; ordering BA gives mass -beta/kappa with the same encoding.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "majoranon/fields.hpp"
#include "majoranon/observables.hpp"
#include "majoranon/relativistic.hpp"

namespace majoranon {

enum class SublatticeOrdering { AB, BA };
enum class GradientSign { plus, minus };
enum class LatticeMethod { eigen, rk4 };

/// Parity (k mod 2, sites counted from 1) of the sites forming sublattice A.
inline constexpr int kSublatticeAParity = 0;

/// Mass sign simulated by a lattice with this ordering under plus-gradient encoding.
inline MassSign simulated_mass(SublatticeOrdering ordering) {
  return ordering == SublatticeOrdering::AB ? MassSign::plus : MassSign::minus;
}

class BinaryLattice {
 public:
  /// Throws InvalidParameter unless n_sites >= 2, kappa > 0, beta >= 0.
  BinaryLattice(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                SublatticeOrdering ordering);

  std::size_t n_sites() const { return n_sites_; }
  double kappa() const { return kappa_; }
  double beta() const { return beta_; }
  SublatticeOrdering ordering() const { return ordering_; }
  /// Dimensionless mass beta / kappa.
  double mu() const { return beta_ / kappa_; }

  /// beta_k for site k = 1..K.
  double detuning(std::size_t site) const;

  /// Diagonal and off-diagonal of H.
  Eigen::VectorXd hamiltonian_diagonal() const;
  Eigen::VectorXd hamiltonian_offdiagonal() const;
  Eigen::MatrixXd hamiltonian() const;

 private:
  std::size_t n_sites_;
  double kappa_;
  double beta_;
  SublatticeOrdering ordering_;
};

BinaryLattice build_binary_lattice(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                                   SublatticeOrdering ordering);

/// Eigendecomposition of a lattice Hamiltonian; evolve() is exact up to
/// rounding and safe to call from several threads.
class LatticePropagator {
 public:
  explicit LatticePropagator(const BinaryLattice& lattice);

  LatticeField evolve(const LatticeField& field, double distance_mm) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// rk4 uses a fixed step with kappa * step <= 1e-3.
LatticeField lattice_evolve(const BinaryLattice& lattice, const LatticeField& field,
                            double distance_mm, LatticeMethod method = LatticeMethod::eigen);

/// Two-site Bloch bands +-sqrt(beta^2 + 4 kappa^2 cos^2(q/2)) for a unit cell
/// of two neighbouring sites, q in radians per cell. The gap 2 beta opens at
/// the zone edge q = pi, which the pi/2-per-site input gradient selects.
EnergyPair band_structure(const BinaryLattice& lattice, double q);

LatticeField encode_spinor_to_lattice(const SpinorField& psi, GradientSign gradient);

/// Inverse of encode_spinor_to_lattice at amplitude level. Throws ShapeError for odd K.
SpinorField decode_lattice_spinor(const LatticeField& field, GradientSign gradient);

struct SpinorIntensities {
  std::vector<double> first;   // |a_{2n-1}|^2
  std::vector<double> second;  // |a_{2n}|^2
};

/// Throws ShapeError for odd K.
SpinorIntensities decode_lattice_intensity(const LatticeField& field);

/// Evolves f0 to each distance (mm, strictly increasing) and records centroid
/// and rms width over sites plus the site intensity row. Empty input throws
/// InvalidParameter.
ObservableSeries zitterbewegung_trace(const BinaryLattice& lattice, const LatticeField& f0,
                                      std::span<const double> distances_mm);

}  // namespace majoranon
