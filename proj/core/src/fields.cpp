#include "majoranon/fields.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "majoranon/errors.hpp"

namespace majoranon {
namespace {

bool all_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

}  // namespace

GridSpec::GridSpec(std::size_t n_cells, Boundary boundary) : n_cells_(n_cells), boundary_(boundary) {
  if (n_cells < 2) {
    throw InvalidParameter("grid needs at least 2 cells, got " + std::to_string(n_cells));
  }
}

SpinorField::SpinorField(ComplexVector comp1, ComplexVector comp2)
    : comp1_(std::move(comp1)), comp2_(std::move(comp2)) {
  if (comp1_.size() == 0) throw ShapeError("spinor field must have at least one cell");
  if (comp1_.size() != comp2_.size()) {
    throw ShapeError("spinor components differ in length: " + std::to_string(comp1_.size()) +
                     " vs " + std::to_string(comp2_.size()));
  }
  if (!all_finite(comp1_) || !all_finite(comp2_)) {
    throw ContractViolation("spinor field contains non-finite amplitudes");
  }
}

SpinorField SpinorField::zeros(std::size_t n_cells) {
  const auto n = static_cast<Eigen::Index>(n_cells);
  return {ComplexVector::Zero(n), ComplexVector::Zero(n)};
}

LatticeField::LatticeField(ComplexVector amps) : amps_(std::move(amps)) {
  if (amps_.size() == 0) throw ShapeError("lattice field must have at least one site");
  if (!all_finite(amps_)) throw ContractViolation("lattice field contains non-finite amplitudes");
}

SpinorField gaussian_spinor(const GridSpec& grid, const GaussianPacket& packet) {
  if (!(packet.sigma > 0.0) || !std::isfinite(packet.sigma)) {
    throw InvalidParameter("gaussian width sigma must be positive and finite");
  }
  if (packet.weight1 == Complex{} && packet.weight2 == Complex{}) {
    throw InvalidParameter("gaussian spinor weights must not both be zero");
  }
  if (!std::isfinite(packet.n0) || !std::isfinite(packet.p0)) {
    throw InvalidParameter("gaussian centre and momentum must be finite");
  }

  const auto n_cells = static_cast<Eigen::Index>(grid.n_cells());
  ComplexVector c1(n_cells);
  ComplexVector c2(n_cells);
  const double two_sigma_sq = 2.0 * packet.sigma * packet.sigma;
  for (Eigen::Index i = 0; i < n_cells; ++i) {
    const double n = static_cast<double>(i + 1);
    const double d = n - packet.n0;
    const Complex envelope = std::exp(-d * d / two_sigma_sq) * std::polar(1.0, packet.p0 * n);
    c1[i] = packet.weight1 * envelope;
    c2[i] = packet.weight2 * envelope;
  }
  return normalize(SpinorField(std::move(c1), std::move(c2)));
}

double total_intensity(const SpinorField& psi) {
  return psi.comp1().squaredNorm() + psi.comp2().squaredNorm();
}

double total_intensity(const LatticeField& field) { return field.amps().squaredNorm(); }

SpinorField normalize(const SpinorField& psi) {
  const double norm_sq = total_intensity(psi);
  if (!(norm_sq > 0.0)) throw DegenerateInput("cannot normalize a zero spinor field");
  const double scale = 1.0 / std::sqrt(norm_sq);
  return {psi.comp1() * scale, psi.comp2() * scale};
}

LatticeField normalize(const LatticeField& field) {
  const double norm_sq = total_intensity(field);
  if (!(norm_sq > 0.0)) throw DegenerateInput("cannot normalize a zero lattice field");
  return LatticeField(field.amps() / std::sqrt(norm_sq));
}

}  // namespace majoranon
