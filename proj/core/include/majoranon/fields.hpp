#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace majoranon {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

enum class Boundary { periodic, open };

/// Transverse discretisation. Cells are numbered n = 1..N with unit spacing;
/// storage index i corresponds to cell n = i + 1.
class GridSpec {
 public:
  GridSpec(std::size_t n_cells, Boundary boundary);

  static GridSpec periodic(std::size_t n_cells) { return {n_cells, Boundary::periodic}; }
  static GridSpec open(std::size_t n_cells) { return {n_cells, Boundary::open}; }

  std::size_t n_cells() const { return n_cells_; }
  Boundary boundary() const { return boundary_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t n_cells_;
  Boundary boundary_;
};

/// Two-component spinor sampled on a grid: (psi_1,n, psi_2,n).
class SpinorField {
 public:
  /// Throws ShapeError on length mismatch or empty input, ContractViolation on
  /// non-finite amplitudes.
  SpinorField(ComplexVector comp1, ComplexVector comp2);

  static SpinorField zeros(std::size_t n_cells);

  std::size_t n_cells() const { return static_cast<std::size_t>(comp1_.size()); }
  const ComplexVector& comp1() const { return comp1_; }
  const ComplexVector& comp2() const { return comp2_; }

 private:
  ComplexVector comp1_;
  ComplexVector comp2_;
};

/// One complex amplitude per waveguide, sites k = 1..K stored at index k - 1.
class LatticeField {
 public:
  explicit LatticeField(ComplexVector amps);

  std::size_t n_sites() const { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amps() const { return amps_; }

 private:
  ComplexVector amps_;
};

struct GaussianPacket {
  double n0 = 0.0;     // centre, in cells
  double sigma = 1.0;  // amplitude width: exp(-(n - n0)^2 / (2 sigma^2))
  double p0 = 0.0;     // mean momentum; phase exp(+i p0 n)
  Complex weight1{1.0, 0.0};
  Complex weight2{0.0, 0.0};
};

/// Gaussian wavepacket normalized to unit total intensity.
SpinorField gaussian_spinor(const GridSpec& grid, const GaussianPacket& packet);

double total_intensity(const SpinorField& psi);
double total_intensity(const LatticeField& field);

/// Throws DegenerateInput for an all-zero field.
SpinorField normalize(const SpinorField& psi);
LatticeField normalize(const LatticeField& field);

}  // namespace majoranon
