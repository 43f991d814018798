#include "majoranon/lattice.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "majoranon/errors.hpp"

namespace majoranon {
namespace {

constexpr double kRk4StepTimesKappa = 1e-3;

// exp(i k pi/2) without trigonometric rounding.
Complex quarter_turns(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

long gradient_direction(GradientSign g) { return g == GradientSign::plus ? 1 : -1; }

void require_matching(const BinaryLattice& lattice, const LatticeField& field) {
  if (field.n_sites() != lattice.n_sites()) {
    throw ShapeError("field has " + std::to_string(field.n_sites()) + " sites but lattice has " +
                     std::to_string(lattice.n_sites()));
  }
}

void require_even(const LatticeField& field) {
  if (field.n_sites() % 2 != 0) {
    throw ShapeError("spinor decoding needs an even number of sites, got " +
                     std::to_string(field.n_sites()));
  }
}

void require_distance(double distance_mm) {
  if (!std::isfinite(distance_mm) || distance_mm < 0.0) {
    throw InvalidParameter("propagation distance must be finite and >= 0");
  }
}

// y = -i H x for the tridiagonal H.
void apply_generator(const Eigen::VectorXd& diag, double offdiag, const ComplexVector& x,
                     ComplexVector& y) {
  const Eigen::Index n = x.size();
  const Complex minus_i{0.0, -1.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex hx = diag[k] * x[k];
    if (k > 0) hx += offdiag * x[k - 1];
    if (k + 1 < n) hx += offdiag * x[k + 1];
    y[k] = minus_i * hx;
  }
}

LatticeField evolve_rk4(const BinaryLattice& lattice, const LatticeField& field, double distance_mm) {
  const Eigen::VectorXd diag = lattice.hamiltonian_diagonal();
  const double offdiag = -lattice.kappa();
  const double kappa_z = lattice.kappa() * distance_mm;
  const long steps = kappa_z > 0.0 ? static_cast<long>(std::ceil(kappa_z / kRk4StepTimesKappa - 1e-9))
                                   : 0;
  if (steps == 0) return field;
  const double h = distance_mm / static_cast<double>(steps);

  ComplexVector a = field.amps();
  const Eigen::Index n = a.size();
  ComplexVector k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long s = 0; s < steps; ++s) {
    apply_generator(diag, offdiag, a, k1);
    tmp = a + (0.5 * h) * k1;
    apply_generator(diag, offdiag, tmp, k2);
    tmp = a + (0.5 * h) * k2;
    apply_generator(diag, offdiag, tmp, k3);
    tmp = a + h * k3;
    apply_generator(diag, offdiag, tmp, k4);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return LatticeField(std::move(a));
}

}  // namespace

BinaryLattice::BinaryLattice(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                             SublatticeOrdering ordering)
    : n_sites_(n_sites), kappa_(kappa_per_mm), beta_(beta_per_mm), ordering_(ordering) {
  if (n_sites < 2) throw InvalidParameter("binary lattice needs at least 2 sites");
  if (!(kappa_per_mm > 0.0) || !std::isfinite(kappa_per_mm)) {
    throw InvalidParameter("coupling kappa must be positive and finite");
  }
  if (!(beta_per_mm >= 0.0) || !std::isfinite(beta_per_mm)) {
    throw InvalidParameter("detuning beta must be finite and >= 0");
  }
}

double BinaryLattice::detuning(std::size_t site) const {
  if (site < 1 || site > n_sites_) throw InvalidParameter("site index out of range");
  const bool on_a = static_cast<int>(site % 2) == kSublatticeAParity;
  const double a_sign = ordering_ == SublatticeOrdering::AB ? 1.0 : -1.0;
  return (on_a ? a_sign : -a_sign) * beta_;
}

Eigen::VectorXd BinaryLattice::hamiltonian_diagonal() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(n_sites_));
  for (std::size_t k = 1; k <= n_sites_; ++k) d[static_cast<Eigen::Index>(k - 1)] = -detuning(k);
  return d;
}

Eigen::VectorXd BinaryLattice::hamiltonian_offdiagonal() const {
  return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_sites_ - 1), -kappa_);
}

Eigen::MatrixXd BinaryLattice::hamiltonian() const {
  const auto n = static_cast<Eigen::Index>(n_sites_);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.diagonal() = hamiltonian_diagonal();
  h.diagonal(1) = hamiltonian_offdiagonal();
  h.diagonal(-1) = hamiltonian_offdiagonal();
  return h;
}

BinaryLattice build_binary_lattice(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                                   SublatticeOrdering ordering) {
  return {n_sites, kappa_per_mm, beta_per_mm, ordering};
}

LatticePropagator::LatticePropagator(const BinaryLattice& lattice) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(lattice.hamiltonian_diagonal(), lattice.hamiltonian_offdiagonal(),
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("tridiagonal eigendecomposition did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

LatticeField LatticePropagator::evolve(const LatticeField& field, double distance_mm) const {
  require_distance(distance_mm);
  if (field.n_sites() != static_cast<std::size_t>(eigenvalues_.size())) {
    throw ShapeError("field does not match the propagator's lattice size");
  }
  if (distance_mm == 0.0) return field;
  ComplexVector modal = eigenvectors_.transpose().cast<Complex>() * field.amps();
  for (Eigen::Index j = 0; j < modal.size(); ++j) {
    modal[j] *= std::polar(1.0, -eigenvalues_[j] * distance_mm);
  }
  return LatticeField(eigenvectors_.cast<Complex>() * modal);
}

LatticeField lattice_evolve(const BinaryLattice& lattice, const LatticeField& field,
                            double distance_mm, LatticeMethod method) {
  require_matching(lattice, field);
  require_distance(distance_mm);
  if (method == LatticeMethod::rk4) return evolve_rk4(lattice, field, distance_mm);
  return LatticePropagator(lattice).evolve(field, distance_mm);
}

EnergyPair band_structure(const BinaryLattice& lattice, double q) {
  const double c = 2.0 * lattice.kappa() * std::cos(0.5 * q);
  const double e = std::hypot(lattice.beta(), c);
  return {e, -e};
}

LatticeField encode_spinor_to_lattice(const SpinorField& psi, GradientSign gradient) {
  const auto n_cells = static_cast<Eigen::Index>(psi.n_cells());
  const long dir = gradient_direction(gradient);
  ComplexVector amps(2 * n_cells);
  for (Eigen::Index i = 0; i < n_cells; ++i) {
    const long odd_site = 2 * static_cast<long>(i) + 1;
    amps[2 * i] = quarter_turns(dir * odd_site) * psi.comp1()[i];
    amps[2 * i + 1] = quarter_turns(dir * (odd_site + 1)) * psi.comp2()[i];
  }
  return LatticeField(std::move(amps));
}

SpinorField decode_lattice_spinor(const LatticeField& field, GradientSign gradient) {
  require_even(field);
  const auto n_cells = static_cast<Eigen::Index>(field.n_sites() / 2);
  const long dir = gradient_direction(gradient);
  ComplexVector c1(n_cells);
  ComplexVector c2(n_cells);
  for (Eigen::Index i = 0; i < n_cells; ++i) {
    const long odd_site = 2 * static_cast<long>(i) + 1;
    c1[i] = quarter_turns(-dir * odd_site) * field.amps()[2 * i];
    c2[i] = quarter_turns(-dir * (odd_site + 1)) * field.amps()[2 * i + 1];
  }
  return {std::move(c1), std::move(c2)};
}

SpinorIntensities decode_lattice_intensity(const LatticeField& field) {
  require_even(field);
  const std::size_t n_cells = field.n_sites() / 2;
  SpinorIntensities out{std::vector<double>(n_cells), std::vector<double>(n_cells)};
  for (std::size_t i = 0; i < n_cells; ++i) {
    out.first[i] = std::norm(field.amps()[static_cast<Eigen::Index>(2 * i)]);
    out.second[i] = std::norm(field.amps()[static_cast<Eigen::Index>(2 * i + 1)]);
  }
  return out;
}

ObservableSeries zitterbewegung_trace(const BinaryLattice& lattice, const LatticeField& f0,
                                      std::span<const double> distances_mm) {
  if (distances_mm.empty()) throw InvalidParameter("zitterbewegung trace needs at least one distance");
  require_matching(lattice, f0);
  const LatticePropagator propagator(lattice);
  ObservableSeries series(lattice.kappa());
  for (double z : distances_mm) {
    const LatticeField f = propagator.evolve(f0, z);
    ObservableRecord rec;
    rec.centroid = centroid(f);
    rec.rms_width = rms_width(f);
    rec.intensity_row = site_intensity(f);
    series.push_back(lattice.kappa() * z, std::move(rec));
  }
  return series;
}

}  // namespace majoranon
