#include "majoranon/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>

#include "majoranon/device.hpp"
#include "majoranon/lattice.hpp"
#include "majoranon/observables.hpp"
#include "majoranon/presets.hpp"
#include "majoranon/relativistic.hpp"
#include "majoranon/series.hpp"

namespace majoranon::cli {
namespace {

SpinorField random_spinor(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexVector a(static_cast<Eigen::Index>(n)), b(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] = {gauss(rng), gauss(rng)};
    b[i] = {gauss(rng), gauss(rng)};
  }
  return normalize(SpinorField(a, b));
}

double max_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

double max_diff(const SpinorField& a, const SpinorField& b) {
  return std::max(max_diff(a.comp1(), b.comp1()), max_diff(a.comp2(), b.comp2()));
}

SpinorField uniform_up(std::size_t n) {
  return normalize(SpinorField(ComplexVector::Ones(static_cast<Eigen::Index>(n)),
                               ComplexVector::Zero(static_cast<Eigen::Index>(n))));
}

LatticeField single_site(std::size_t k, std::size_t k0) {
  ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(k));
  a[static_cast<Eigen::Index>(k0 - 1)] = 1.0;
  return LatticeField(a);
}

CheckResult at_most(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, false, measured <= bound};
}

CheckResult at_least(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, true, measured >= bound};
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> out;
  const std::size_t n = 16;
  const GridSpec grid = GridSpec::periodic(n);
  const SpinorField psi = random_spinor(n, 20240611);

  out.push_back(at_most("charge conjugation is an involution", max_diff(charge_conjugate(charge_conjugate(psi)), psi),
                        1e-14));
  const auto parts = decompose_majoranon(psi);
  out.push_back(at_most("compose(decompose(psi)) = psi", max_diff(compose_majoranon(parts.plus, parts.minus), psi),
                        1e-14));
  out.push_back(at_most("psi_plus, psi_minus are C-invariant",
                        std::max(max_diff(charge_conjugate(parts.plus), parts.plus),
                                 max_diff(charge_conjugate(parts.minus), parts.minus)),
                        1e-12));

  double dirac_norm = 0.0;
  for (double zeta : {0.5, 2.0, 5.0}) {
    dirac_norm = std::max(dirac_norm,
                          std::abs(total_intensity(dirac_evolve(psi, MassSign::minus, {1.2, zeta}, grid)) - 1.0));
  }
  out.push_back(at_most("Dirac evolution is unitary", dirac_norm, 1e-10));

  double composition = 0.0;
  for (double mu : {0.0, 0.65, 1.2}) {
    composition = std::max(composition, max_diff(majorana_evolve_composed(psi, {mu, 2.0}, grid),
                                                 majorana_evolve_reference(psi, {mu, 2.0}, grid, 1e-3)));
  }
  out.push_back(at_most("composed = direct Majorana integration", composition, 1e-8));

  const auto zetas = sample_range(5.0, 0.05);
  const auto rest = uniform_up(8);
  const auto maj = pseudo_energy_series({.kind = EvolverKind::majorana_composed, .mu = 0.65, .n_cells = 8}, rest, zetas);
  const auto dir = pseudo_energy_series({.kind = EvolverKind::dirac_plus, .mu = 0.65, .n_cells = 8}, rest, zetas);
  double law = 0.0;
  double conserved = 0.0;
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    law = std::max(law, std::abs(maj.pseudo_energies()[i] - std::cos(1.3 * zetas[i])));
    conserved = std::max(conserved, std::abs(dir.pseudo_energies()[i] - 1.0));
  }
  out.push_back(at_most("p=0 Majoranon <sigma_z> = cos(2 mu zeta)", law, 1e-9));
  out.push_back(at_most("p=0 Dirac <sigma_z> = 1", conserved, 1e-10));

  const auto flat41 = build_binary_lattice(41, 1.0, 0.0, SublatticeOrdering::AB);
  const auto diffraction = site_intensity(lattice_evolve(flat41, single_site(41, 21), 2.0));
  double bessel = 0.0;
  for (int d = -10; d <= 10; ++d) {
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(d)), 4.0);
    bessel = std::max(bessel, std::abs(diffraction[static_cast<std::size_t>(20 + d)] - j * j));
  }
  out.push_back(at_most("discrete diffraction = J_n(2 kappa Z)^2", bessel, 1e-6));

  const auto coupler = build_binary_lattice(2, 0.7, 0.0, SublatticeOrdering::AB);
  double two_site = 0.0;
  for (double z : {0.5, 1.7, 4.0}) {
    const auto f = lattice_evolve(coupler, single_site(2, 1), z);
    two_site = std::max(two_site, std::abs(std::norm(f.amps()[0]) - std::pow(std::cos(0.7 * z), 2)));
  }
  out.push_back(at_most("two-site coupler = cos^2(kappa Z)", two_site, 1e-10));

  const auto lat = build_binary_lattice(30, 0.072, 1.2 * 0.072, SublatticeOrdering::AB);
  const auto f0 = encode_spinor_to_lattice(preset_initial_spinor(highmass_preset()), GradientSign::plus);
  out.push_back(at_most("lattice eigen = rk4",
                        max_diff(lattice_evolve(lat, f0, 5.0 / 0.072, LatticeMethod::eigen).amps(),
                                 lattice_evolve(lat, f0, 5.0 / 0.072, LatticeMethod::rk4).amps()),
                        1e-6));

  const std::size_t wide = 32;
  const auto packet = gaussian_spinor(GridSpec::periodic(wide), {.n0 = 16.5, .sigma = 4.0});
  const LatticePropagator dirac_lattice(build_binary_lattice(2 * wide, 1.0, 0.65, SublatticeOrdering::AB));
  const auto encoded = encode_spinor_to_lattice(packet, GradientSign::plus);
  double limit = 0.0;
  for (double zeta : sample_range(4.4, 0.2)) {
    const auto lattice_side = decode_lattice_intensity(dirac_lattice.evolve(encoded, zeta));
    const auto spectral = dirac_evolve(packet, MassSign::plus, {0.65, zeta}, GridSpec::periodic(wide));
    std::vector<double> p, q;
    for (std::size_t i = 0; i < wide; ++i) {
      p.push_back(lattice_side.first[i]);
      p.push_back(lattice_side.second[i]);
      q.push_back(std::norm(spectral.comp1()[static_cast<Eigen::Index>(i)]));
      q.push_back(std::norm(spectral.comp2()[static_cast<Eigen::Index>(i)]));
    }
    limit = std::max(limit, total_variation_distance(p, q));
  }
  out.push_back(at_most("lattice Dirac limit (TV distance)", limit, 0.05));

  double device_norm = 0.0;
  for (const auto* preset : {&lowmass_preset(), &highmass_preset()}) {
    for (double zeta : preset->measurement_zetas) {
      const auto run = simulate_device(preset_device(*preset, zeta), preset_initial_spinor(*preset));
      device_norm = std::max(device_norm, std::abs(run.output.total_intensity - 1.0));
    }
  }
  out.push_back(at_most("device pipeline conserves intensity", device_norm, 1e-10));

  const std::size_t m = 12;
  const auto rpsi = random_spinor(m, 7);
  const DimensionlessParams params{0.65, 2.0};
  const auto fine = majorana_evolve_reference(rpsi, params, GridSpec::periodic(m), 0.025);
  const double e1 = max_diff(majorana_evolve_reference(rpsi, params, GridSpec::periodic(m), 0.1), fine);
  const double e2 = max_diff(majorana_evolve_reference(rpsi, params, GridSpec::periodic(m), 0.05), fine);
  out.push_back(at_least("reference integrator order (error ratio)", e1 / e2, 12.0));
  return out;
}

bool print_validation_table(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
        << std::scientific << std::setprecision(3) << r.measured << (r.at_least ? " >= " : " <= ") << r.bound
        << '\n';
  }
  out << std::defaultfloat << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all;
}

}  // namespace majoranon::cli
