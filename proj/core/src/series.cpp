#include "majoranon/series.hpp"

#include <cmath>
#include <optional>

#include "majoranon/errors.hpp"
#include "majoranon/relativistic.hpp"
#include "parallel.hpp"

namespace majoranon {
namespace {

void require_increasing(std::span<const double> zetas, bool strict) {
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    if (!std::isfinite(zetas[i]) || zetas[i] < 0.0) {
      throw InvalidParameter("sample coordinates must be finite and >= 0");
    }
    if (i > 0 && (strict ? !(zetas[i] > zetas[i - 1]) : zetas[i] < zetas[i - 1])) {
      throw InvalidParameter("sample coordinates must be increasing");
    }
  }
}

std::vector<SpinorField> evolve_lattice_samples(const Evolver& evolver, const SpinorField& psi0,
                                                std::span<const double> zetas, unsigned threads) {
  const auto ordering = evolver.kind == EvolverKind::lattice_plus ? SublatticeOrdering::AB
                                                                  : SublatticeOrdering::BA;
  const BinaryLattice lattice(2 * psi0.n_cells(), 1.0, evolver.mu, ordering);
  const LatticeField f0 = encode_spinor_to_lattice(psi0, GradientSign::plus);

  std::vector<std::optional<SpinorField>> slots(zetas.size());
  if (evolver.lattice_method == LatticeMethod::eigen) {
    const LatticePropagator propagator(lattice);
    detail::parallel_for(zetas.size(), threads, [&](std::size_t i) {
      slots[i] = decode_lattice_spinor(propagator.evolve(f0, zetas[i]), GradientSign::plus);
    });
  } else {
    detail::parallel_for(zetas.size(), threads, [&](std::size_t i) {
      slots[i] = decode_lattice_spinor(lattice_evolve(lattice, f0, zetas[i], LatticeMethod::rk4),
                                       GradientSign::plus);
    });
  }
  std::vector<SpinorField> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class Propagator>
std::vector<SpinorField> sample_propagator(const Propagator& propagator,
                                           std::span<const double> zetas, unsigned threads) {
  std::vector<std::optional<SpinorField>> slots(zetas.size());
  detail::parallel_for(zetas.size(), threads,
                       [&](std::size_t i) { slots[i] = propagator.at(zetas[i]); });
  std::vector<SpinorField> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::vector<SpinorField> evolve_samples(const Evolver& evolver, const SpinorField& psi0,
                                        std::span<const double> zetas, unsigned threads) {
  if (psi0.n_cells() != evolver.n_cells) {
    throw ShapeError("initial spinor does not match the evolver grid");
  }
  require_increasing(zetas, false);
  const GridSpec grid = GridSpec::periodic(evolver.n_cells);

  switch (evolver.kind) {
    case EvolverKind::dirac_plus:
      return sample_propagator(DiracPropagator(psi0, MassSign::plus, evolver.mu, grid), zetas, threads);
    case EvolverKind::dirac_minus:
      return sample_propagator(DiracPropagator(psi0, MassSign::minus, evolver.mu, grid), zetas, threads);
    case EvolverKind::majorana_composed:
      return sample_propagator(MajoranonPropagator(psi0, evolver.mu, grid), zetas, threads);
    case EvolverKind::majorana_reference:
      return majorana_evolve_reference(psi0, evolver.mu, zetas, grid, evolver.reference_step);
    case EvolverKind::lattice_plus:
    case EvolverKind::lattice_minus:
      break;
  }
  return evolve_lattice_samples(evolver, psi0, zetas, threads);
}

ObservableSeries pseudo_energy_series(const Evolver& evolver, const SpinorField& psi0,
                                      std::span<const double> zetas, unsigned threads,
                                      std::optional<double> kappa_per_mm) {
  if (zetas.empty()) throw InvalidParameter("pseudo-energy series needs at least one sample");
  require_increasing(zetas, true);
  const auto states = evolve_samples(evolver, psi0, zetas, threads);
  ObservableSeries series(kappa_per_mm);
  for (std::size_t i = 0; i < states.size(); ++i) {
    ObservableRecord rec;
    rec.pseudo_energy = pseudo_energy(states[i]);
    series.push_back(zetas[i], std::move(rec));
  }
  return series;
}

ObservableSeries spinor_observable_series(const Evolver& evolver, const SpinorField& psi0,
                                          std::span<const double> zetas, unsigned threads,
                                          std::optional<double> kappa_per_mm) {
  if (zetas.empty()) throw InvalidParameter("observable series needs at least one sample");
  require_increasing(zetas, true);
  const auto states = evolve_samples(evolver, psi0, zetas, threads);
  ObservableSeries series(kappa_per_mm);
  for (std::size_t i = 0; i < states.size(); ++i) {
    ObservableRecord rec;
    rec.pseudo_energy = pseudo_energy(states[i]);
    rec.centroid = centroid(states[i]);
    rec.rms_width = rms_width(states[i]);
    series.push_back(zetas[i], std::move(rec));
  }
  return series;
}

IntensityMap intensity_map(const Evolver& evolver, const SpinorField& psi0,
                           std::span<const double> zetas, unsigned threads) {
  if (zetas.empty()) throw InvalidParameter("intensity map needs at least one sample");
  require_increasing(zetas, true);
  const auto states = evolve_samples(evolver, psi0, zetas, threads);
  const auto rows = static_cast<Eigen::Index>(states.size());
  const auto cols = static_cast<Eigen::Index>(psi0.n_cells());
  IntensityMap map{std::vector<double>(zetas.begin(), zetas.end()), Eigen::MatrixXd(rows, cols),
                   Eigen::MatrixXd(rows, cols)};
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& s = states[static_cast<std::size_t>(r)];
    map.first.row(r) = s.comp1().cwiseAbs2().transpose();
    map.second.row(r) = s.comp2().cwiseAbs2().transpose();
  }
  return map;
}

Eigen::MatrixXd lattice_intensity_map(const BinaryLattice& lattice, const LatticeField& f0,
                                      std::span<const double> distances_mm, unsigned threads) {
  if (distances_mm.empty()) throw InvalidParameter("intensity map needs at least one sample");
  if (f0.n_sites() != lattice.n_sites()) throw ShapeError("field does not match lattice");
  require_increasing(distances_mm, true);
  const LatticePropagator propagator(lattice);
  Eigen::MatrixXd map(static_cast<Eigen::Index>(distances_mm.size()),
                      static_cast<Eigen::Index>(f0.n_sites()));
  detail::parallel_for(distances_mm.size(), threads, [&](std::size_t i) {
    map.row(static_cast<Eigen::Index>(i)) =
        propagator.evolve(f0, distances_mm[i]).amps().cwiseAbs2().transpose();
  });
  return map;
}

std::vector<double> sample_range(double max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameter("sample step must be positive");
  if (!(max >= 0.0) || !std::isfinite(max)) throw InvalidParameter("sample range must be >= 0");
  const auto last = static_cast<long>(std::floor(max / step * (1.0 + 1e-9) + 1e-12));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last + 1));
  for (long i = 0; i <= last; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

}  // namespace majoranon
