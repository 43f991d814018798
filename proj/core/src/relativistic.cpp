#include "majoranon/relativistic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "majoranon/errors.hpp"

namespace majoranon {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_periodic(const GridSpec& grid) {
  if (grid.boundary() != Boundary::periodic) {
    throw UnsupportedBoundary("spectral spinor propagation requires a periodic grid");
  }
}

void require_on_grid(const SpinorField& psi, const GridSpec& grid) {
  if (psi.n_cells() != grid.n_cells()) {
    throw ShapeError("spinor has " + std::to_string(psi.n_cells()) + " cells but grid has " +
                     std::to_string(grid.n_cells()));
  }
}

void require_same_size(const SpinorField& a, const SpinorField& b) {
  if (a.n_cells() != b.n_cells()) {
    throw ShapeError("spinor sizes differ: " + std::to_string(a.n_cells()) + " vs " +
                     std::to_string(b.n_cells()));
  }
}

ComplexVector forward(const ComplexVector& x) {
  Eigen::FFT<double> fft;
  ComplexVector out;
  fft.fwd(out, x);
  return out;
}

ComplexVector inverse(const ComplexVector& x) {
  Eigen::FFT<double> fft;
  ComplexVector out;
  fft.inv(out, x);
  return out;
}

// State layout for the real-doubled integrator: Re psi1, Im psi1, Re psi2, Im psi2.
using RealState = Eigen::Matrix<double, Eigen::Dynamic, 4>;

RealState to_real_state(const SpinorField& psi) {
  RealState y(static_cast<Eigen::Index>(psi.n_cells()), 4);
  y.col(0) = psi.comp1().real();
  y.col(1) = psi.comp1().imag();
  y.col(2) = psi.comp2().real();
  y.col(3) = psi.comp2().imag();
  return y;
}

SpinorField from_real_state(const RealState& y) {
  ComplexVector c1(y.rows());
  ComplexVector c2(y.rows());
  c1.real() = y.col(0);
  c1.imag() = y.col(1);
  c2.real() = y.col(2);
  c2.imag() = y.col(3);
  return {std::move(c1), std::move(c2)};
}

class MajoranaRhs {
 public:
  MajoranaRhs(Eigen::MatrixXd derivative, double mu) : derivative_(std::move(derivative)), mu_(mu) {}

  // d psi1 = -D psi2 + i mu conj(psi2),  d psi2 = -D psi1 - i mu conj(psi1)
  void operator()(const RealState& y, RealState& dy) const {
    dy.noalias() = derivative_ * y;
    dy.col(0).swap(dy.col(2));
    dy.col(1).swap(dy.col(3));
    dy = -dy;
    dy.col(0) += mu_ * y.col(3);
    dy.col(1) += mu_ * y.col(2);
    dy.col(2) -= mu_ * y.col(1);
    dy.col(3) -= mu_ * y.col(0);
  }

 private:
  Eigen::MatrixXd derivative_;
  double mu_;
};

class Rk4Stepper {
 public:
  explicit Rk4Stepper(Eigen::Index rows)
      : k1_(rows, 4), k2_(rows, 4), k3_(rows, 4), k4_(rows, 4), tmp_(rows, 4) {}

  void step(const MajoranaRhs& rhs, RealState& y, double h) {
    rhs(y, k1_);
    tmp_ = y + (0.5 * h) * k1_;
    rhs(tmp_, k2_);
    tmp_ = y + (0.5 * h) * k2_;
    rhs(tmp_, k3_);
    tmp_ = y + h * k3_;
    rhs(tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  RealState k1_, k2_, k3_, k4_, tmp_;
};

// Number of equal substeps covering `length` with none longer than max_step.
long substeps(double length, double max_step) {
  if (length <= 0.0) return 0;
  const double ratio = length / max_step;
  return std::max(1L, static_cast<long>(std::ceil(ratio - 1e-9 * ratio)));
}

}  // namespace

void DimensionlessParams::validate() const {
  if (!std::isfinite(mu) || mu < 0.0) throw InvalidParameter("mass mu must be finite and >= 0");
  if (!std::isfinite(zeta) || zeta < 0.0) {
    throw InvalidParameter("evolution coordinate zeta must be finite and >= 0");
  }
}

SpinorField charge_conjugate(const SpinorField& psi) {
  return {-psi.comp2().conjugate(), -psi.comp1().conjugate()};
}

MajoranonParts decompose_majoranon(const SpinorField& psi) {
  const SpinorField psi_c = charge_conjugate(psi);
  const Complex inv_2i = 1.0 / (2.0 * kI);
  return {
      SpinorField((psi.comp1() + psi_c.comp1()) * 0.5, (psi.comp2() + psi_c.comp2()) * 0.5),
      SpinorField((psi.comp1() - psi_c.comp1()) * inv_2i, (psi.comp2() - psi_c.comp2()) * inv_2i),
  };
}

SpinorField compose_majoranon(const SpinorField& psi_plus, const SpinorField& psi_minus) {
  require_same_size(psi_plus, psi_minus);
  return {psi_plus.comp1() + kI * psi_minus.comp1(), psi_plus.comp2() + kI * psi_minus.comp2()};
}

EnergyPair dispersion(double mu, double q) {
  const double e = std::hypot(q, mu);
  return {e, -e};
}

std::vector<double> momentum_grid(std::size_t n_cells) {
  const auto n = static_cast<long>(n_cells);
  std::vector<double> q(n_cells);
  for (long idx = 0; idx < n; ++idx) {
    long j = idx < (n + 1) / 2 ? idx : idx - n;
    if (n % 2 == 0 && idx == n / 2) j = 0;  // Nyquist bin
    q[static_cast<std::size_t>(idx)] = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                       static_cast<double>(n);
  }
  return q;
}

Eigen::MatrixXd spectral_derivative_matrix(std::size_t n_cells) {
  // D_{nm} = -(1/N) sum_j q_j sin(q_j (n - m)); the cosine part cancels
  // because the momentum set is symmetric.
  const std::vector<double> q = momentum_grid(n_cells);
  const auto n = static_cast<Eigen::Index>(n_cells);
  Eigen::VectorXd kernel(n);
  for (Eigen::Index d = 0; d < n; ++d) {
    double acc = 0.0;
    for (double qj : q) acc += qj * std::sin(qj * static_cast<double>(d));
    kernel[d] = -acc / static_cast<double>(n);
  }
  Eigen::MatrixXd dmat(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) dmat(r, c) = kernel[((r - c) % n + n) % n];
  }
  return dmat;
}

DiracPropagator::DiracPropagator(const SpinorField& psi, MassSign sign, double mu,
                                 const GridSpec& grid)
    : mass_(sign_value(sign) * mu),
      momenta_(momentum_grid(grid.n_cells())),
      spectrum1_(forward(psi.comp1())),
      spectrum2_(forward(psi.comp2())) {
  require_periodic(grid);
  require_on_grid(psi, grid);
  DimensionlessParams{mu, 0.0}.validate();
}

SpinorField DiracPropagator::at(double zeta) const {
  DimensionlessParams{std::abs(mass_), zeta}.validate();
  const auto n = spectrum1_.size();
  ComplexVector out1(n);
  ComplexVector out2(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // exp(-i (q sigma_x + m sigma_z) zeta) = cos(E zeta) - i sin(E zeta)/E (q sigma_x + m sigma_z)
    const double q = momenta_[static_cast<std::size_t>(j)];
    const double energy = std::hypot(q, mass_);
    const double c = std::cos(energy * zeta);
    const double s_over_e = energy > 0.0 ? std::sin(energy * zeta) / energy : zeta;
    const Complex u11{c, -mass_ * s_over_e};
    const Complex u22{c, mass_ * s_over_e};
    const Complex u12{0.0, -q * s_over_e};
    out1[j] = u11 * spectrum1_[j] + u12 * spectrum2_[j];
    out2[j] = u12 * spectrum1_[j] + u22 * spectrum2_[j];
  }
  return {inverse(out1), inverse(out2)};
}

SpinorField dirac_evolve(const SpinorField& psi, MassSign sign, const DimensionlessParams& params,
                         const GridSpec& grid) {
  params.validate();
  return DiracPropagator(psi, sign, params.mu, grid).at(params.zeta);
}

namespace {

MajoranonParts checked_parts(const SpinorField& psi, const GridSpec& grid) {
  require_periodic(grid);
  require_on_grid(psi, grid);
  return decompose_majoranon(psi);
}

}  // namespace

MajoranonPropagator::MajoranonPropagator(const SpinorField& psi, double mu, const GridSpec& grid)
    : MajoranonPropagator(checked_parts(psi, grid), mu, grid) {}

MajoranonPropagator::MajoranonPropagator(const MajoranonParts& parts, double mu,
                                         const GridSpec& grid)
    : plus_(parts.plus, MassSign::plus, mu, grid), minus_(parts.minus, MassSign::minus, mu, grid) {}

SpinorField MajoranonPropagator::at(double zeta) const {
  return compose_majoranon(plus_.at(zeta), minus_.at(zeta));
}

SpinorField majorana_evolve_composed(const SpinorField& psi, const DimensionlessParams& params,
                                     const GridSpec& grid) {
  params.validate();
  return MajoranonPropagator(psi, params.mu, grid).at(params.zeta);
}

SpinorField majorana_evolve_reference(const SpinorField& psi, const DimensionlessParams& params,
                                      const GridSpec& grid, double max_step) {
  params.validate();
  const double zeta = params.zeta;
  return majorana_evolve_reference(psi, params.mu, std::span<const double>(&zeta, 1), grid,
                                   max_step)
      .front();
}

std::vector<SpinorField> majorana_evolve_reference(const SpinorField& psi, double mu,
                                                   std::span<const double> zetas,
                                                   const GridSpec& grid, double max_step) {
  if (!(max_step > 0.0) || !std::isfinite(max_step)) {
    throw InvalidParameter("reference integrator step must be positive and finite");
  }
  require_periodic(grid);
  require_on_grid(psi, grid);
  DimensionlessParams{mu, 0.0}.validate();

  const MajoranaRhs rhs(spectral_derivative_matrix(grid.n_cells()), mu);
  RealState y = to_real_state(psi);
  Rk4Stepper stepper(y.rows());

  std::vector<SpinorField> out;
  out.reserve(zetas.size());
  double reached = 0.0;
  for (double target : zetas) {
    DimensionlessParams{mu, target}.validate();
    if (target < reached) throw InvalidParameter("checkpoint zetas must be non-decreasing");
    const long steps = substeps(target - reached, max_step);
    const double h = steps > 0 ? (target - reached) / static_cast<double>(steps) : 0.0;
    for (long s = 0; s < steps; ++s) stepper.step(rhs, y, h);
    reached = target;
    out.push_back(from_real_state(y));
  }
  return out;
}

}  // namespace majoranon
