// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// quantities underneath. `acceptance --criterion k` runs a single criterion.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "majoranon/majoranon.hpp"
#include "support/oracles.hpp"

using namespace majoranon;
namespace fs = std::filesystem;

namespace {

struct Report {
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string bound(const std::string& name, double measured, const char* rel, double limit) {
  return name + " = " + num(measured) + " (" + rel + " " + num(limit) + ")";
}

double max_diff(const SpinorField& a, const SpinorField& b) { return oracle::max_abs_diff(a, b); }

std::vector<double> interleaved(const SpinorField& s) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.comp1().size(); ++i) {
    out.push_back(std::norm(s.comp1()[i]));
    out.push_back(std::norm(s.comp2()[i]));
  }
  return out;
}

std::vector<double> interleaved(const SpinorIntensities& s) {
  std::vector<double> out;
  for (std::size_t i = 0; i < s.first.size(); ++i) {
    out.push_back(s.first[i]);
    out.push_back(s.second[i]);
  }
  return out;
}

const std::vector<const ExperimentPreset*>& presets() {
  static const std::vector<const ExperimentPreset*> all{&lowmass_preset(), &highmass_preset()};
  return all;
}

Report composition_theorem() {
  Report r;
  const std::size_t n = 64;
  const GridSpec grid = GridSpec::periodic(n);
  const std::vector<double> zetas{0.5, 2.0, 5.0};
  double worst = 0.0;
  for (double mu : {0.0, 0.65, 1.2}) {
    double worst_mu = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto psi = oracle::random_spinor(n, seed);
      const MajoranonPropagator composed(psi, mu, grid);
      const auto reference = majorana_evolve_reference(psi, mu, zetas, grid, 1e-3);
      for (std::size_t i = 0; i < zetas.size(); ++i) {
        worst_mu = std::max(worst_mu, max_diff(composed.at(zetas[i]), reference[i]));
      }
    }
    r.lines.push_back("mu = " + num(mu) + ": max amplitude deviation " + num(worst_mu));
    worst = std::max(worst, worst_mu);
  }
  r.check(worst <= 1e-8, bound("composed vs reference, N = 64, 20 spinors", worst, "<=", 1e-8));
  return r;
}

Report rest_laws() {
  Report r;
  const auto zetas = sample_range(5.0, 0.05);
  const auto rest = oracle::uniform_spinor(16, 1.0, 0.0);
  for (double mu : {0.65, 1.2}) {
    const auto maj = pseudo_energy_series({.kind = EvolverKind::majorana_composed, .mu = mu, .n_cells = 16}, rest,
                                          zetas).pseudo_energies();
    const auto dir = pseudo_energy_series({.kind = EvolverKind::dirac_plus, .mu = mu, .n_cells = 16}, rest,
                                          zetas).pseudo_energies();
    double law = 0.0;
    double conserved = 0.0;
    for (std::size_t i = 0; i < zetas.size(); ++i) {
      law = std::max(law, std::abs(maj[i] - std::cos(2.0 * mu * zetas[i])));
      conserved = std::max(conserved, std::abs(dir[i] - 1.0));
    }
    r.check(law <= 1e-9, bound("mu = " + num(mu) + " Majoranon |<sigma_z> - cos(2 mu zeta)|", law, "<=", 1e-9));
    r.check(conserved <= 1e-10, bound("mu = " + num(mu) + " Dirac |<sigma_z> - 1|", conserved, "<=", 1e-10));
  }
  return r;
}

Report unitarity() {
  Report r;
  const auto zetas = sample_range(5.0, 0.5);
  for (const auto* preset : presets()) {
    const auto psi0 = preset_initial_spinor(*preset);
    const GridSpec grid = GridSpec::periodic(preset->n_cells);
    double dirac = 0.0;
    double composed = 0.0;
    double lattice_eigen = 0.0;
    double lattice_rk4 = 0.0;
    double reference = 0.0;
    double device = 0.0;
    auto parts_norm = [](const SpinorField& s) {
      const auto p = decompose_majoranon(s);
      return total_intensity(p.plus) + total_intensity(p.minus);
    };
    const double parts0 = parts_norm(psi0);

    const MajoranonPropagator majoranon(psi0, preset->mu, grid);
    const auto ref = majorana_evolve_reference(psi0, preset->mu, zetas, grid, 1e-3);
    const auto encoded = encode_spinor_to_lattice(psi0, GradientSign::plus);
    for (auto ordering : {SublatticeOrdering::AB, SublatticeOrdering::BA}) {
      const auto lattice = build_binary_lattice(preset->n_sites(), preset->kappa_per_mm, preset->beta_per_mm(),
                                                ordering);
      const LatticePropagator prop(lattice);
      for (double z : zetas) {
        lattice_eigen = std::max(lattice_eigen,
                                 std::abs(total_intensity(prop.evolve(encoded, z / preset->kappa_per_mm)) - 1.0));
      }
      lattice_rk4 = std::max(lattice_rk4, std::abs(total_intensity(lattice_evolve(
                                                       lattice, encoded, zetas.back() / preset->kappa_per_mm,
                                                       LatticeMethod::rk4)) - 1.0));
    }
    for (std::size_t i = 0; i < zetas.size(); ++i) {
      for (auto sign : {MassSign::plus, MassSign::minus}) {
        dirac = std::max(dirac,
                         std::abs(total_intensity(dirac_evolve(psi0, sign, {preset->mu, zetas[i]}, grid)) - 1.0));
      }
      composed = std::max(composed, std::abs(parts_norm(majoranon.at(zetas[i])) - parts0));
      reference = std::max(reference, std::abs(parts_norm(ref[i]) - parts0));
      if (zetas[i] > 0.0) {
        device = std::max(device,
                          std::abs(simulate_device(preset_device(*preset, zetas[i]), psi0).output.total_intensity - 1.0));
      }
    }
    const std::string tag = preset->name + ": ";
    r.check(dirac <= 1e-10, bound(tag + "Dirac (+-mu) intensity drift", dirac, "<=", 1e-10));
    r.check(composed <= 1e-10, bound(tag + "composed psi_+ + psi_- drift", composed, "<=", 1e-10));
    r.check(reference <= 1e-6, bound(tag + "reference (rk4) psi_+ + psi_- drift", reference, "<=", 1e-6));
    r.check(lattice_eigen <= 1e-10, bound(tag + "lattice eigen drift (AB, BA)", lattice_eigen, "<=", 1e-10));
    r.check(lattice_rk4 <= 1e-6, bound(tag + "lattice rk4 drift (AB, BA)", lattice_rk4, "<=", 1e-6));
    r.check(device <= 1e-10, bound(tag + "device total intensity drift", device, "<=", 1e-10));
  }
  return r;
}

LatticeField single_site(std::size_t k, std::size_t site) {
  ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(k));
  a[static_cast<Eigen::Index>(site - 1)] = 1.0;
  return LatticeField(a);
}

Report lattice_oracles() {
  Report r;
  const double kappa = 1.0;
  const double z = 2.0;
  const auto small = site_intensity(
      lattice_evolve(build_binary_lattice(41, kappa, 0.0, SublatticeOrdering::AB), single_site(41, 21), z));
  const auto large = site_intensity(
      lattice_evolve(build_binary_lattice(401, kappa, 0.0, SublatticeOrdering::AB), single_site(401, 201), z));
  double vs_bessel = 0.0;
  double vs_large = 0.0;
  for (int d = -20; d <= 20; ++d) {
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(d)), 2.0 * kappa * z);
    vs_bessel = std::max(vs_bessel, std::abs(small[static_cast<std::size_t>(20 + d)] - j * j));
    vs_large = std::max(vs_large, std::abs(small[static_cast<std::size_t>(20 + d)] -
                                           large[static_cast<std::size_t>(200 + d)]));
  }
  r.check(vs_bessel <= 1e-6, bound("K = 41 diffraction vs J_n(2 kappa Z)^2", vs_bessel, "<=", 1e-6));
  r.check(vs_large <= 1e-6, bound("K = 41 vs K = 401 lattice", vs_large, "<=", 1e-6));

  double coupler = 0.0;
  for (double k : {0.3, 1.0}) {
    const auto lattice = build_binary_lattice(2, k, 0.0, SublatticeOrdering::AB);
    for (double zz : sample_range(10.0, 0.25)) {
      const auto f = lattice_evolve(lattice, single_site(2, 1), zz);
      coupler = std::max(coupler, std::abs(std::norm(f.amps()[0]) - std::pow(std::cos(k * zz), 2)));
    }
  }
  r.check(coupler <= 1e-10, bound("K = 2 coupler vs cos^2(kappa Z)", coupler, "<=", 1e-10));
  return r;
}

Report dirac_limit() {
  Report r;
  const std::size_t cells = 32;
  const double mu = 0.65;
  const GridSpec grid = GridSpec::periodic(cells);
  const auto packet = gaussian_spinor(grid, {.n0 = centred_n0(cells), .sigma = 4.0});
  const auto encoded = encode_spinor_to_lattice(packet, GradientSign::plus);
  for (auto ordering : {SublatticeOrdering::AB, SublatticeOrdering::BA}) {
    const LatticePropagator lattice(build_binary_lattice(2 * cells, 1.0, mu, ordering));
    const DiracPropagator spectral(packet, simulated_mass(ordering), mu, grid);
    double worst = 0.0;
    for (double zeta : sample_range(4.4, 0.1)) {
      worst = std::max(worst, total_variation_distance(interleaved(decode_lattice_intensity(lattice.evolve(encoded, zeta))),
                                                       interleaved(spectral.at(zeta))));
    }
    r.check(worst <= 0.05, bound(std::string(ordering == SublatticeOrdering::AB ? "AB (+mu)" : "BA (-mu)") +
                                     " lattice vs spectral Dirac, max TV over zeta <= 4.4",
                                 worst, "<=", 0.05));
  }
  return r;
}

Report preset_structure() {
  Report r;
  const auto& low = lowmass_preset();
  const auto& high = highmass_preset();
  const auto sl = spinor_observable_series({.kind = EvolverKind::majorana_composed, .mu = low.mu, .n_cells = low.n_cells},
                                           preset_initial_spinor(low), low.measurement_zetas);
  const auto sh = spinor_observable_series(
      {.kind = EvolverKind::majorana_composed, .mu = high.mu, .n_cells = high.n_cells}, preset_initial_spinor(high),
      high.measurement_zetas);
  for (std::size_t i = 0; i < 2; ++i) {
    r.check(sl.pseudo_energies()[i] > 0.0,
            "lowmass <sigma_z>(" + num(sl.zeta()[i]) + ") = " + num(sl.pseudo_energies()[i]) + " > 0");
    r.check(sh.pseudo_energies()[i] < 0.0,
            "highmass <sigma_z>(" + num(sh.zeta()[i]) + ") = " + num(sh.pseudo_energies()[i]) + " < 0");
  }
  const auto wl = sl.rms_widths();
  const auto wh = sh.rms_widths();
  r.check(wl[1] > wl[0], "lowmass width grows: " + num(wl[0]) + " -> " + num(wl[1]));
  r.check(wl[1] - wl[0] > wh[1] - wh[0],
          "lowmass spreading " + num(wl[1] - wl[0]) + " > highmass spreading " + num(wh[1] - wh[0]));
  return r;
}

struct Curve {
  double amplitude;
  std::optional<double> first_min;
};

Curve curve(EvolverKind kind, const ExperimentPreset& preset, const std::vector<double>& zetas) {
  const auto s = pseudo_energy_series({.kind = kind, .mu = preset.mu, .n_cells = preset.n_cells},
                                      preset_initial_spinor(preset), zetas)
                     .pseudo_energies();
  return {peak_to_peak(s), first_minimum(zetas, s)};
}

Report mass_dependence() {
  Report r;
  const auto zetas = sample_range(5.0, 0.01);
  const auto& low = lowmass_preset();
  const auto& high = highmass_preset();

  const auto dl = curve(EvolverKind::dirac_plus, low, zetas);
  const auto dh = curve(EvolverKind::dirac_plus, high, zetas);
  r.check(dh.amplitude < dl.amplitude,
          "Dirac amplitude " + num(dh.amplitude) + " (mu 1.2) < " + num(dl.amplitude) + " (mu 0.65)");

  const auto ml = curve(EvolverKind::majorana_composed, low, zetas);
  const auto mh = curve(EvolverKind::majorana_composed, high, zetas);
  const double rel = std::abs(ml.amplitude - mh.amplitude) / std::max(ml.amplitude, mh.amplitude);
  r.check(rel < 0.10, "Majoranon amplitudes " + num(ml.amplitude) + " (mu 0.65) and " + num(mh.amplitude) +
                          " (mu 1.2): relative difference " + num(rel) + " (< 0.1)");

  const auto ll = curve(EvolverKind::lattice_plus, low, zetas);
  const auto lh = curve(EvolverKind::lattice_plus, high, zetas);
  r.lines.push_back("info  lattice-level Dirac amplitudes " + num(ll.amplitude) + " / " + num(lh.amplitude));
  std::vector<double> device_amp;
  for (const auto* preset : presets()) {
    const std::vector<double> positive(zetas.begin() + 1, zetas.end());
    const auto run = simulate_device(preset_device(*preset, zetas.back()), preset_initial_spinor(*preset), positive);
    auto series = run.series.pseudo_energies();
    series.insert(series.begin(), pseudo_energy(preset_initial_spinor(*preset)));
    device_amp.push_back(peak_to_peak(series));
  }
  r.lines.push_back("info  device-level Majoranon amplitudes " + num(device_amp[0]) + " / " + num(device_amp[1]) +
                    ", relative difference " +
                    num(std::abs(device_amp[0] - device_amp[1]) / std::max(device_amp[0], device_amp[1])));

  const bool minima = ml.first_min && mh.first_min && *mh.first_min < *ml.first_min;
  r.check(minima, "first Majoranon minimum at zeta " + (mh.first_min ? num(*mh.first_min) : "none") +
                      " (mu 1.2) < " + (ml.first_min ? num(*ml.first_min) : "none") + " (mu 0.65)");
  return r;
}

Report device_end_to_end() {
  Report r;
  for (const auto* preset : presets()) {
    const auto psi0 = preset_initial_spinor(*preset);
    const GridSpec grid = GridSpec::periodic(preset->n_cells);
    for (double zeta : preset->measurement_zetas) {
      const auto run = simulate_device(preset_device(*preset, zeta), psi0);
      const double tv = total_variation_distance(interleaved(run.output.decoded),
                                                 interleaved(majorana_evolve_composed(psi0, {preset->mu, zeta}, grid)));
      r.check(tv <= 0.08, bound(preset->name + " zeta " + num(zeta) + ": device vs composed TV", tv, "<=", 0.08));
      const double drift = std::abs(run.output.total_intensity - 1.0);
      r.check(drift <= 1e-10, bound(preset->name + " zeta " + num(zeta) + ": total intensity drift", drift, "<=", 1e-10));
    }

    DeviceSpec spec = preset_device(*preset, preset->measurement_zetas.back());
    spec.coupler_theta = 0.0;
    const auto planes = encoded_planes(psi0);
    const auto out = propagate_and_recombine(spec, planes);
    const double length = spec.effective_length_mm();
    const auto upper = LatticePropagator(spec.lattice_upper).evolve(planes.upper, length);
    const auto lower = LatticePropagator(spec.lattice_lower).evolve(planes.lower, length);
    const double diff = std::max(oracle::max_abs_diff(out.ports.upper.amps(), upper.amps()),
                                 oracle::max_abs_diff(out.ports.lower.amps(), lower.amps()));
    r.check(diff == 0.0, bound(preset->name + ": theta = 0 ports vs independent lattice runs", diff, "==", 0.0));
  }
  return r;
}

Report convergence() {
  Report r;
  const std::size_t n = 32;
  const GridSpec grid = GridSpec::periodic(n);
  const auto psi = oracle::random_spinor(n, 32);
  const DimensionlessParams params{0.65, 2.0};
  const auto exact = majorana_evolve_composed(psi, params, grid);
  double previous = 0.0;
  double worst_ratio = 1e300;
  for (double h : {0.1, 0.05, 0.025}) {
    const double err = max_diff(majorana_evolve_reference(psi, params, grid, h), exact);
    if (previous > 0.0) {
      const double ratio = previous / err;
      worst_ratio = std::min(worst_ratio, ratio);
      r.lines.push_back("step " + num(2 * h) + " -> " + num(h) + ": error " + num(previous) + " -> " + num(err) +
                        ", ratio " + num(ratio));
    }
    previous = err;
  }
  r.check(worst_ratio >= 12.0, bound("worst error ratio per halving", worst_ratio, ">=", 12.0));
  return r;
}

int sim(const std::string& env, const std::string& args) {
  const std::string cmd = env + " \"" + SIM_EXECUTABLE + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Report determinism() {
  Report r;
  const fs::path root = fs::temp_directory_path() / "majoranon_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  for (const char* model : {"spinor", "lattice", "device"}) {
    const fs::path conf = root / (std::string(model) + ".conf");
    std::ofstream(conf) << "preset = lowmass\nmodel = " << model
                        << "\nzeta_max = 4.4\nzeta_step = 0.1\noutputs = pseudo_energy, centroid_width, map\n";
    std::vector<fs::path> dirs;
    bool ran = true;
    for (const char* threads : {"1", "1", "4"}) {
      dirs.push_back(root / (std::string(model) + "_" + std::to_string(dirs.size())));
      ran = ran && sim(std::string("SIM_THREADS=") + threads, "run --config " + conf.string() + " --out " +
                                                                 dirs.back().string()) == 0;
    }
    r.check(ran, std::string(model) + ": three runs exit 0");
    std::size_t compared = 0;
    bool identical = ran;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      if (entry.path().extension() != ".csv") continue;
      const std::string a = slurp(entry.path());
      for (std::size_t i = 1; i < dirs.size(); ++i) {
        identical = identical && fs::exists(dirs[i] / entry.path().filename()) &&
                    a == slurp(dirs[i] / entry.path().filename());
      }
      ++compared;
    }
    r.check(identical && compared > 0, std::string(model) + ": " + std::to_string(compared) +
                                           " CSV files bit-identical across SIM_THREADS = 1, 1, 4");
  }
  fs::remove_all(root);
  return r;
}

struct Criterion {
  const char* title;
  std::function<Report()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"composition theorem: composed = direct Majorana integration", composition_theorem},
      {"analytic p = 0 laws", rest_laws},
      {"unitarity of every evolver on the presets", unitarity},
      {"lattice oracles: discrete diffraction and two-site coupler", lattice_oracles},
      {"lattice Dirac limit for a broad packet", dirac_limit},
      {"preset sign and spreading structure", preset_structure},
      {"mass dependence of the pseudo-energy oscillation", mass_dependence},
      {"device end-to-end vs composed evolution", device_end_to_end},
      {"fourth-order convergence of the reference integrator", convergence},
      {"sim run output is deterministic", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majoranon acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_passed = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (only != 0 && only != k) continue;
    Report report;
    try {
      report = criteria()[i].run();
    } catch (const std::exception& e) {
      report.check(false, std::string("exception: ") + e.what());
    }
    all_passed = all_passed && report.passed;
    std::cout << (report.passed ? "PASS" : "FAIL") << "  criterion " << k << ": " << criteria()[i].title << '\n';
    for (const auto& line : report.lines) std::cout << "        " << line << '\n';
  }
  return all_passed ? 0 : 1;
}
