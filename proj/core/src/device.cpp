#include "majoranon/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "majoranon/errors.hpp"
#include "majoranon/relativistic.hpp"
#include "parallel.hpp"

namespace majoranon {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kPhaseResidualTolerance = 1e-9;
constexpr double kPlaneBalanceTolerance = 1e-12;

Complex quarter_turns(int j) {
  switch (((j % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Segment count j in 0..3 with j*pi/2 == arg(z) mod 2 pi.
int quantize_phase(Complex z, std::size_t site) {
  const double phase = std::arg(z);
  const double turns = phase / kHalfPi;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) * kHalfPi > kPhaseResidualTolerance) {
    throw InvalidParameter("site " + std::to_string(site) + " needs phase " + std::to_string(phase) +
                           " rad, which is not a multiple of pi/2 and cannot be segmented");
  }
  return ((static_cast<int>(nearest) % 4) + 4) % 4;
}

bool same_lattice_shape(const BinaryLattice& a, const BinaryLattice& b) {
  return a.n_sites() == b.n_sites() && a.kappa() == b.kappa() && a.beta() == b.beta();
}

class PlanePropagators {
 public:
  explicit PlanePropagators(const DeviceSpec& spec)
      : spec_(spec), upper_(spec.lattice_upper), lower_(spec.lattice_lower) {}

  DeviceOutput run(const PlanePair& inputs, double distance_mm) const {
    const LatticeField up = upper_.evolve(inputs.upper, distance_mm);
    const LatticeField low = lower_.evolve(inputs.lower, distance_mm);
    DeviceOutput out{recombine(up, low, spec_.coupler_theta), {}, {}, std::nullopt, 0.0};
    out.upper_intensity = site_intensity(out.ports.upper);
    out.total_intensity = total_intensity(out.ports.upper) + total_intensity(out.ports.lower);
    out.decoded = decode_lattice_intensity(out.ports.upper);
    const double upper_sum =
        std::accumulate(out.upper_intensity.begin(), out.upper_intensity.end(), 0.0);
    if (upper_sum > 0.0) {
      double diff = 0.0;
      for (std::size_t n = 0; n < out.decoded.first.size(); ++n) {
        out.decoded.first[n] /= upper_sum;
        out.decoded.second[n] /= upper_sum;
        diff += out.decoded.first[n] - out.decoded.second[n];
      }
      out.pseudo_energy = diff;
    }
    return out;
  }

 private:
  const DeviceSpec& spec_;
  LatticePropagator upper_;
  LatticePropagator lower_;
};

void require_plane_sizes(const DeviceSpec& spec, const PlanePair& inputs) {
  const std::size_t k = spec.lattice_upper.n_sites();
  if (inputs.upper.n_sites() != k || inputs.lower.n_sites() != k) {
    throw ShapeError("plane inputs do not match the device lattice size");
  }
}

}  // namespace

void DeviceSpec::validate() const {
  if (!same_lattice_shape(lattice_upper, lattice_lower)) {
    throw InvalidParameter("upper and lower lattices must share K, kappa and beta");
  }
  if (lattice_upper.ordering() != SublatticeOrdering::AB ||
      lattice_lower.ordering() != SublatticeOrdering::BA) {
    throw InvalidParameter("upper lattice must be ordered AB and lower lattice BA");
  }
  if (lattice_upper.n_sites() % 2 != 0) throw InvalidParameter("device lattices need an even K");
  if (!std::isfinite(coupler_theta)) throw InvalidParameter("coupler angle must be finite");
  if (!(effective_length(evolution_length_mm, fanout_extra_mm) > 0.0)) {
    throw InvalidParameter("effective evolution length must be positive");
  }
}

double DeviceSpec::effective_length_mm() const {
  return effective_length(evolution_length_mm, fanout_extra_mm);
}

DeviceSpec make_device_spec(std::size_t n_sites, double kappa_per_mm, double beta_per_mm,
                            double evolution_length_mm, double fanout_extra_mm,
                            double coupler_theta) {
  DeviceSpec spec{
      BinaryLattice(n_sites, kappa_per_mm, beta_per_mm, SublatticeOrdering::AB),
      BinaryLattice(n_sites, kappa_per_mm, beta_per_mm, SublatticeOrdering::BA),
      evolution_length_mm,
      fanout_extra_mm,
      coupler_theta,
  };
  spec.validate();
  return spec;
}

double segmentation_phase(int j) {
  if (j < 0 || j > 3) throw InvalidParameter("segment count j must lie in 0..3");
  return static_cast<double>(j) * kHalfPi;
}

double effective_length(double evolution_length_mm, double fanout_extra_mm) {
  if (!(evolution_length_mm >= 0.0) || !(fanout_extra_mm >= 0.0) ||
      !std::isfinite(evolution_length_mm) || !std::isfinite(fanout_extra_mm)) {
    throw InvalidParameter("evolution and fan-out lengths must be finite and >= 0");
  }
  return evolution_length_mm + fanout_extra_mm;
}

PlanePair front_splitter(const LatticeField& input) {
  const double half = std::numbers::sqrt2 / 2.0;
  return {LatticeField(input.amps() * half), LatticeField(input.amps() * (kI * half))};
}

PlanePair recombine(const LatticeField& upper, const LatticeField& lower, double theta) {
  if (upper.n_sites() != lower.n_sites()) throw ShapeError("coupled planes differ in size");
  const double c = std::cos(theta);
  const Complex is = kI * std::sin(theta);
  return {LatticeField(c * upper.amps() + is * lower.amps()),
          LatticeField(is * upper.amps() + c * lower.amps())};
}

PlanePair encoded_planes(const SpinorField& psi0) {
  const MajoranonParts parts = decompose_majoranon(psi0);
  return {encode_spinor_to_lattice(parts.plus, GradientSign::plus),
          encode_spinor_to_lattice(parts.minus, GradientSign::plus)};
}

SegmentedInput segmented_input(const PlanePair& targets) {
  const std::size_t k = targets.upper.n_sites();
  if (targets.lower.n_sites() != k) throw ShapeError("target planes differ in size");
  const auto& up = targets.upper.amps();
  const auto& low = targets.lower.amps();
  const double scale = std::max(up.cwiseAbs().maxCoeff(), low.cwiseAbs().maxCoeff());

  ComplexVector beam(static_cast<Eigen::Index>(k));
  std::vector<int> j_up(k, 0);
  std::vector<int> j_low(k, 0);
  ComplexVector plane_up(static_cast<Eigen::Index>(k));
  ComplexVector plane_low(static_cast<Eigen::Index>(k));
  for (std::size_t site = 1; site <= k; ++site) {
    const auto i = static_cast<Eigen::Index>(site - 1);
    const double mu = std::abs(up[i]);
    const double ml = std::abs(low[i]);
    if (std::abs(mu - ml) > kPlaneBalanceTolerance * scale) {
      throw InvalidParameter("site " + std::to_string(site) +
                             " needs unequal plane intensities, which a balanced splitter cannot feed");
    }
    const double amplitude = std::hypot(mu, ml);
    beam[i] = amplitude;
    if (amplitude > 0.0) {
      j_up[site - 1] = quantize_phase(up[i], site);
      j_low[site - 1] = quantize_phase(low[i] / kI, site);
    }
  }
  const PlanePair split = front_splitter(LatticeField(beam));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); ++i) {
    plane_up[i] = split.upper.amps()[i] * quarter_turns(j_up[static_cast<std::size_t>(i)]);
    plane_low[i] = split.lower.amps()[i] * quarter_turns(j_low[static_cast<std::size_t>(i)]);
  }
  return {LatticeField(std::move(beam)), std::move(j_up), std::move(j_low),
          {LatticeField(std::move(plane_up)), LatticeField(std::move(plane_low))}};
}

DeviceOutput propagate_and_recombine(const DeviceSpec& spec, const PlanePair& inputs,
                                     std::optional<double> distance_mm) {
  spec.validate();
  require_plane_sizes(spec, inputs);
  return PlanePropagators(spec).run(inputs, distance_mm.value_or(spec.effective_length_mm()));
}

DeviceRun simulate_device(const DeviceSpec& spec, const SpinorField& psi0,
                          std::span<const double> series_zetas, unsigned threads) {
  spec.validate();
  if (2 * psi0.n_cells() != spec.lattice_upper.n_sites()) {
    throw ShapeError("initial spinor needs K/2 = " + std::to_string(spec.lattice_upper.n_sites() / 2) +
                     " cells");
  }
  if (std::abs(total_intensity(psi0) - 1.0) > 1e-9) {
    throw ContractViolation("device input spinor must be normalized");
  }
  for (std::size_t i = 0; i < series_zetas.size(); ++i) {
    if (!(series_zetas[i] >= 0.0) || (i > 0 && !(series_zetas[i] > series_zetas[i - 1]))) {
      throw InvalidParameter("device series samples must be >= 0 and strictly increasing");
    }
  }

  const PlanePair targets = encoded_planes(psi0);
  std::optional<SegmentedInput> stage;
  if (spec.encoding == EncodingStage::segmented) stage = segmented_input(targets);
  const PlanePair& inputs = stage ? stage->planes : targets;

  const PlanePropagators planes(spec);
  const double kappa = spec.lattice_upper.kappa();
  std::vector<std::optional<DeviceOutput>> slots(series_zetas.size());
  detail::parallel_for(series_zetas.size(), threads, [&](std::size_t i) {
    slots[i] = planes.run(inputs, series_zetas[i] / kappa);
  });

  ObservableSeries series(kappa);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const DeviceOutput& out = *slots[i];
    ObservableRecord rec;
    rec.pseudo_energy = out.pseudo_energy;
    if (out.pseudo_energy) {
      std::vector<double> cells(out.decoded.first.size());
      for (std::size_t n = 0; n < cells.size(); ++n) cells[n] = out.decoded.first[n] + out.decoded.second[n];
      rec.centroid = centroid(cells);
      rec.rms_width = rms_width(cells);
    }
    rec.intensity_row = out.upper_intensity;
    series.push_back(series_zetas[i], std::move(rec));
  }
  return {planes.run(inputs, spec.effective_length_mm()), std::move(stage), std::move(series)};
}

}  // namespace majoranon
