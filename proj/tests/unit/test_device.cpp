#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "majoranon/device.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/presets.hpp"
#include "majoranon/relativistic.hpp"
#include "support/oracles.hpp"

using namespace majoranon;
using std::numbers::pi;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

LatticeField random_field(std::size_t k, std::uint64_t seed) {
  return LatticeField(oracle::random_spinor(k, seed).comp1());
}

}  // namespace

TEST_CASE("segmentation phases") {
  CHECK(segmentation_phase(0) == 0.0);
  CHECK(segmentation_phase(1) == doctest::Approx(pi / 2));
  CHECK(segmentation_phase(2) == doctest::Approx(pi));
  CHECK(segmentation_phase(3) == doctest::Approx(3 * pi / 2));
  CHECK_THROWS_AS(segmentation_phase(4), InvalidParameter);
  CHECK_THROWS_AS(segmentation_phase(-1), InvalidParameter);
}

TEST_CASE("effective length") {
  CHECK(effective_length(12.5, 0.0) == 12.5);
  CHECK(effective_length(3.0, 2.0) == effective_length(5.0, 0.0));
  CHECK(0.55 / 0.064 == doctest::Approx(8.6).epsilon(0.01));
  CHECK(preset_device(lowmass_preset(), 0.55).effective_length_mm() == doctest::Approx(0.55 / 0.064));
  CHECK_THROWS_AS(effective_length(-1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(effective_length(1.0, -0.5), InvalidParameter);
}

TEST_CASE("front splitter") {
  ComplexVector one(1);
  one << 1.0;
  const auto s = front_splitter(LatticeField(one));
  CHECK(std::abs(s.upper.amps()[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s.lower.amps()[0] - Complex(0, 1.0 / std::sqrt(2.0))) < 1e-15);

  const auto f = random_field(9, 3);
  const auto split = front_splitter(f);
  CHECK(total_intensity(split.upper) + total_intensity(split.lower) ==
        doctest::Approx(total_intensity(f)).epsilon(1e-15));
  const auto zero = front_splitter(LatticeField(ComplexVector::Zero(4)));
  CHECK(total_intensity(zero.upper) + total_intensity(zero.lower) == 0.0);
}

TEST_CASE("recombination coupler") {
  const auto up = random_field(6, 1);
  const auto low = random_field(6, 2);

  const auto balanced = recombine(up, low, kBalancedCouplerTheta);
  CHECK(oracle::max_abs_diff(balanced.upper.amps(),
                             (up.amps() + Complex(0, 1) * low.amps()) / std::sqrt(2.0)) < 1e-15);

  const auto identity = recombine(up, low, 0.0);
  CHECK(oracle::max_abs_diff(identity.upper.amps(), up.amps()) == 0.0);
  CHECK(oracle::max_abs_diff(identity.lower.amps(), low.amps()) == 0.0);

  for (double theta : {0.1, kBalancedCouplerTheta, 1.3}) {
    const auto out = recombine(up, low, theta);
    for (Eigen::Index k = 0; k < 6; ++k) {
      CHECK(std::norm(out.upper.amps()[k]) + std::norm(out.lower.amps()[k]) ==
            doctest::Approx(std::norm(up.amps()[k]) + std::norm(low.amps()[k])).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(recombine(up, random_field(4, 1), 0.3), ShapeError);
}

TEST_CASE("DeviceSpec validation") {
  CHECK_NOTHROW(make_device_spec(26, 0.064, 0.0416, 10.0).validate());
  CHECK_THROWS_AS(make_device_spec(25, 0.064, 0.0416, 10.0).validate(), InvalidParameter);
  CHECK_THROWS_AS(make_device_spec(26, 0.064, 0.0416, 0.0).validate(), InvalidParameter);
  CHECK_NOTHROW(make_device_spec(26, 0.064, 0.0416, 0.0, 3.0).validate());

  auto swapped = make_device_spec(26, 0.064, 0.0416, 10.0);
  std::swap(swapped.lattice_upper, swapped.lattice_lower);
  CHECK_THROWS_AS(swapped.validate(), InvalidParameter);

  auto mismatched = make_device_spec(26, 0.064, 0.0416, 10.0);
  mismatched.lattice_lower = build_binary_lattice(26, 0.064, 0.05, SublatticeOrdering::BA);
  CHECK_THROWS_AS(mismatched.validate(), InvalidParameter);
}

TEST_CASE("constructive interference sends all light to the upper ports") {
  const auto spec = make_device_spec(10, 1.0, 0.0, 2.0);
  const auto up = normalize(random_field(10, 8));
  const PlanePair inputs{up, LatticeField(Complex(0, -1) * up.amps())};
  const auto out = propagate_and_recombine(spec, inputs);
  CHECK(total_intensity(out.ports.lower) < 1e-24);
  CHECK(total_intensity(out.ports.upper) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("recombination realises psi_plus + i psi_minus") {
  const auto psi = oracle::random_spinor(8, 12);
  const auto spec = make_device_spec(16, 0.5, 0.4, 3.0);
  const auto planes = encoded_planes(psi);
  const auto at_entry = propagate_and_recombine(spec, planes, 0.0);
  const auto target = encode_spinor_to_lattice(psi, GradientSign::plus);
  for (Eigen::Index k = 0; k < 16; ++k) {
    CHECK(std::abs(at_entry.upper_intensity[static_cast<std::size_t>(k)] - std::norm(target.amps()[k]) / 2.0) <
          1e-12);
  }

  // After propagation: dense-exponential oracle for each plane.
  const auto out = propagate_and_recombine(spec, planes);
  const double z = spec.effective_length_mm();
  const ComplexVector up = oracle::evolve_by_matrix_exponential(spec.lattice_upper.hamiltonian(), planes.upper.amps(), z);
  const ComplexVector low = oracle::evolve_by_matrix_exponential(spec.lattice_lower.hamiltonian(), planes.lower.amps(), z);
  CHECK(oracle::max_abs_diff(out.ports.upper.amps(), (up + Complex(0, 1) * low) / std::sqrt(2.0)) < 1e-11);
}

TEST_CASE("uncoupled planes reproduce two Dirac-lattice runs exactly") {
  const auto& preset = highmass_preset();
  auto spec = preset_device(preset, 3.5);
  spec.coupler_theta = 0.0;
  const auto planes = encoded_planes(preset_initial_spinor(preset));
  const auto out = propagate_and_recombine(spec, planes);
  const double z = spec.effective_length_mm();
  CHECK(oracle::max_abs_diff(out.ports.upper.amps(), lattice_evolve(spec.lattice_upper, planes.upper, z).amps()) == 0.0);
  CHECK(oracle::max_abs_diff(out.ports.lower.amps(), lattice_evolve(spec.lattice_lower, planes.lower, z).amps()) == 0.0);
}

TEST_CASE("segmented input stage") {
  const auto psi0 = preset_initial_spinor(lowmass_preset());
  const auto targets = encoded_planes(psi0);
  const auto stage = segmented_input(targets);
  CHECK(oracle::max_abs_diff(stage.planes.upper.amps(), targets.upper.amps()) < 1e-15);
  CHECK(oracle::max_abs_diff(stage.planes.lower.amps(), targets.lower.amps()) < 1e-15);
  for (Eigen::Index i = 0; i < stage.beam.amps().size(); ++i) {
    CHECK(stage.beam.amps()[i].imag() == 0.0);
    CHECK(stage.beam.amps()[i].real() >= 0.0);
  }
  // The lower plane uses the reversed segmentation profile.
  for (std::size_t k = 1; k <= stage.upper_segments.size(); ++k) {
    const int even = k % 2 == 0 ? 2 : 0;
    const int kk = static_cast<int>(k);
    CHECK(stage.upper_segments[k - 1] == (kk + even) % 4);
    CHECK(stage.lower_segments[k - 1] == ((-kk + even) % 4 + 4) % 4);
  }

  ComplexVector a = ComplexVector::Constant(4, 0.5);
  ComplexVector b = ComplexVector::Constant(4, 0.5);
  b[2] = 0.4;
  CHECK_THROWS_AS(segmented_input({LatticeField(a), LatticeField(b)}), InvalidParameter);
  b = ComplexVector::Constant(4, Complex(0, 0.5));
  a[1] = std::polar(0.5, 0.3);
  CHECK_THROWS_AS(segmented_input({LatticeField(a), LatticeField(b)}), InvalidParameter);
}

TEST_CASE("full pipeline conserves intensity") {
  for (const auto* preset : {&lowmass_preset(), &highmass_preset()}) {
    for (double zeta : preset->measurement_zetas) {
      const auto run = simulate_device(preset_device(*preset, zeta), preset_initial_spinor(*preset));
      CHECK(std::abs(run.output.total_intensity - 1.0) < 1e-10);
      REQUIRE(run.input_stage.has_value());
      CHECK(total_intensity(run.input_stage->beam) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("device output populations at the measured lengths") {
  const auto& low = lowmass_preset();
  const auto lr = simulate_device(preset_device(low, 0.55), preset_initial_spinor(low));
  CHECK(sum(lr.output.decoded.first) > sum(lr.output.decoded.second));

  const auto& high = highmass_preset();
  const auto hr = simulate_device(preset_device(high, 0.9), preset_initial_spinor(high));
  CHECK(sum(hr.output.decoded.second) > sum(hr.output.decoded.first));
  REQUIRE(hr.output.pseudo_energy.has_value());
  CHECK(*hr.output.pseudo_energy < 0.0);
  CHECK(sum(hr.output.decoded.first) + sum(hr.output.decoded.second) == doctest::Approx(1.0));
}

TEST_CASE("ideal and segmented encodings agree") {
  const auto& low = lowmass_preset();
  auto spec = preset_device(low, 4.4);
  const auto psi0 = preset_initial_spinor(low);
  const auto segmented = simulate_device(spec, psi0);
  spec.encoding = EncodingStage::ideal;
  const auto ideal = simulate_device(spec, psi0);
  CHECK_FALSE(ideal.input_stage.has_value());
  CHECK(oracle::max_abs_diff(segmented.output.ports.upper.amps(), ideal.output.ports.upper.amps()) < 1e-14);
}

TEST_CASE("device series and errors") {
  const auto& low = lowmass_preset();
  const auto spec = preset_device(low, 4.4);
  const auto psi0 = preset_initial_spinor(low);
  const std::vector<double> zetas{0.55, 2.0, 4.4};
  const auto run1 = simulate_device(spec, psi0, zetas, 1);
  const auto run3 = simulate_device(spec, psi0, zetas, 3);
  REQUIRE(run1.series.size() == 3);
  CHECK(run1.series.pseudo_energies() == run3.series.pseudo_energies());
  CHECK(run1.series.pseudo_energies()[2] == doctest::Approx(*run1.output.pseudo_energy).epsilon(1e-12));
  CHECK(run1.series.distance_mm(0) == doctest::Approx(0.55 / 0.064));

  CHECK_THROWS_AS(simulate_device(spec, oracle::random_spinor(12, 1)), ShapeError);
  CHECK_THROWS_AS(simulate_device(spec, SpinorField(psi0.comp1() * 2.0, psi0.comp2())), ContractViolation);
  CHECK_THROWS_AS(simulate_device(spec, psi0, std::vector<double>{1.0, 0.5}), InvalidParameter);
}
