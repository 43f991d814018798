#include "majoranon/cli/run.hpp"

#include <cmath>
#include <cstdlib>
#include <charconv>
#include <string>
#include <thread>

#include "majoranon/cli/csv.hpp"
#include "majoranon/cli/heatmap.hpp"
#include "majoranon/device.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/lattice.hpp"
#include "majoranon/observables.hpp"
#include "majoranon/series.hpp"

namespace majoranon::cli {
namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kRk4NormTolerance = 1e-6;

// Per-sample results of one model, in a model-independent form.
struct Samples {
  ObservableSeries series;
  Eigen::MatrixXd first;            // |psi_1,n|^2 rows
  Eigen::MatrixXd second;           // |psi_2,n|^2 rows
  std::optional<Eigen::MatrixXd> sites;  // raw site intensities (lattice, device)
};

void prepare_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

void check_norm(double total, double tolerance, const std::string& what, double zeta) {
  if (!(std::abs(total - 1.0) <= tolerance)) {
    throw ContractViolation(what + " intensity drifted to " + std::to_string(total) + " at zeta " +
                            std::to_string(zeta));
  }
}

Samples spinor_samples(const ExperimentConfig& cfg, const SpinorField& psi0,
                       const std::vector<double>& zetas, unsigned threads) {
  const Evolver evolver{cfg.evolver, cfg.mu, cfg.cells, cfg.reference_step, cfg.lattice_method};
  const auto states = evolve_samples(evolver, psi0, zetas, threads);
  const auto rows = static_cast<Eigen::Index>(states.size());
  const auto cols = static_cast<Eigen::Index>(cfg.cells);
  Samples out{ObservableSeries(cfg.kappa_per_mm), Eigen::MatrixXd(rows, cols), Eigen::MatrixXd(rows, cols),
              std::nullopt};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const SpinorField& s = states[i];
    if (cfg.evolver == EvolverKind::majorana_composed || cfg.evolver == EvolverKind::majorana_reference) {
      const auto parts = decompose_majoranon(s);
      check_norm(total_intensity(parts.plus) + total_intensity(parts.minus),
                 cfg.evolver == EvolverKind::majorana_reference ? kRk4NormTolerance : kNormTolerance,
                 "psi_plus + psi_minus", zetas[i]);
    } else {
      check_norm(total_intensity(s), kNormTolerance, "spinor", zetas[i]);
    }
    ObservableRecord rec;
    rec.pseudo_energy = pseudo_energy(s);
    rec.centroid = centroid(s);
    rec.rms_width = rms_width(s);
    out.series.push_back(zetas[i], std::move(rec));
    const auto r = static_cast<Eigen::Index>(i);
    out.first.row(r) = s.comp1().cwiseAbs2().transpose();
    out.second.row(r) = s.comp2().cwiseAbs2().transpose();
  }
  return out;
}

Samples lattice_samples(const ExperimentConfig& cfg, const SpinorField& psi0,
                        const std::vector<double>& zetas, unsigned threads) {
  const auto ordering =
      cfg.evolver == EvolverKind::dirac_minus ? SublatticeOrdering::BA : SublatticeOrdering::AB;
  const BinaryLattice lattice(2 * cfg.cells, cfg.kappa_per_mm, cfg.mu * cfg.kappa_per_mm, ordering);
  const LatticeField f0 = encode_spinor_to_lattice(psi0, GradientSign::plus);

  std::vector<double> distances;
  for (double z : zetas) distances.push_back(z / cfg.kappa_per_mm);
  Eigen::MatrixXd sites;
  if (cfg.lattice_method == LatticeMethod::eigen) {
    sites = lattice_intensity_map(lattice, f0, distances, threads);
  } else {
    sites.resize(static_cast<Eigen::Index>(distances.size()), static_cast<Eigen::Index>(lattice.n_sites()));
    for (std::size_t i = 0; i < distances.size(); ++i) {
      sites.row(static_cast<Eigen::Index>(i)) =
          lattice_evolve(lattice, f0, distances[i], LatticeMethod::rk4).amps().cwiseAbs2().transpose();
    }
  }

  const auto rows = sites.rows();
  const auto cols = static_cast<Eigen::Index>(cfg.cells);
  Samples out{ObservableSeries(cfg.kappa_per_mm), Eigen::MatrixXd(rows, cols), Eigen::MatrixXd(rows, cols),
              sites};
  const double tolerance = cfg.lattice_method == LatticeMethod::eigen ? kNormTolerance : kRk4NormTolerance;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double zeta = zetas[static_cast<std::size_t>(r)];
    check_norm(sites.row(r).sum(), tolerance, "lattice", zeta);
    for (Eigen::Index n = 0; n < cols; ++n) {
      out.first(r, n) = sites(r, 2 * n);
      out.second(r, n) = sites(r, 2 * n + 1);
    }
    const std::vector<double> row(sites.row(r).data(), sites.row(r).data() + sites.cols());
    ObservableRecord rec;
    rec.pseudo_energy = (out.first.row(r).sum() - out.second.row(r).sum()) / sites.row(r).sum();
    rec.centroid = centroid(std::span<const double>(row));
    rec.rms_width = rms_width(std::span<const double>(row));
    out.series.push_back(zeta, std::move(rec));
  }
  return out;
}

Samples device_samples(const ExperimentConfig& cfg, const SpinorField& psi0,
                       const std::vector<double>& zetas, unsigned threads) {
  if (!(zetas.back() > 0.0)) throw InvalidParameter("the device model needs a positive evolution length");
  DeviceSpec spec = make_device_spec(2 * cfg.cells, cfg.kappa_per_mm, cfg.mu * cfg.kappa_per_mm,
                                     zetas.back() / cfg.kappa_per_mm, 0.0, cfg.coupler_theta);
  spec.encoding = cfg.encoding;
  spec.input_waist_cells = cfg.sigma;
  const DeviceRun run = simulate_device(spec, psi0, zetas, threads);
  check_norm(run.output.total_intensity, kNormTolerance, "device", zetas.back());

  const auto rows = static_cast<Eigen::Index>(zetas.size());
  const auto cols = static_cast<Eigen::Index>(cfg.cells);
  Samples out{run.series, Eigen::MatrixXd(rows, cols), Eigen::MatrixXd(rows, cols),
              Eigen::MatrixXd(rows, 2 * cols)};
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = run.series.records()[static_cast<std::size_t>(r)].intensity_row;
    double total = 0.0;
    for (Eigen::Index k = 0; k < 2 * cols; ++k) {
      (*out.sites)(r, k) = row[static_cast<std::size_t>(k)];
      total += row[static_cast<std::size_t>(k)];
    }
    const double scale = total > 0.0 ? 1.0 / total : 0.0;
    for (Eigen::Index n = 0; n < cols; ++n) {
      out.first(r, n) = row[static_cast<std::size_t>(2 * n)] * scale;
      out.second(r, n) = row[static_cast<std::size_t>(2 * n + 1)] * scale;
    }
  }
  return out;
}

Samples model_samples(const ExperimentConfig& cfg, const SpinorField& psi0, const std::vector<double>& zetas,
                      unsigned threads) {
  switch (cfg.model) {
    case Model::spinor: return spinor_samples(cfg, psi0, zetas, threads);
    case Model::lattice: return lattice_samples(cfg, psi0, zetas, threads);
    case Model::device: break;
  }
  return device_samples(cfg, psi0, zetas, threads);
}

void write_map_pair(const std::vector<double>& zetas, const Eigen::MatrixXd& map, const std::filesystem::path& dir,
                    const std::string& stem, Colormap colormap, RunSummary& summary) {
  const auto csv = dir / (stem + ".csv");
  write_map_csv(zetas, map, csv);
  summary.files.push_back(csv);
  const auto ppm = dir / (stem + ".ppm");
  render_heatmap(map, ppm, colormap);
  summary.files.push_back(ppm);
}

}  // namespace

unsigned threads_from_env() {
  const char* raw = std::getenv("SIM_THREADS");
  if (!raw || !*raw) return std::max(1U, std::thread::hardware_concurrency());
  const std::string text(raw);
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    throw ConfigError("SIM_THREADS", "environment", "expected a positive integer, got '" + text + "'");
  }
  return v;
}

SpinorField initial_spinor(const ExperimentConfig& cfg) {
  return gaussian_spinor(GridSpec::periodic(cfg.cells), {.n0 = cfg.n0, .sigma = cfg.sigma, .p0 = cfg.p0});
}

RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, unsigned threads) {
  prepare_directory(out_dir);
  const SpinorField psi0 = initial_spinor(cfg);
  const Samples samples = model_samples(cfg, psi0, cfg.zetas, threads);

  RunSummary summary;
  summary.samples = cfg.zetas.size();
  if (!samples.series.empty()) {
    const auto& last = samples.series.records().back();
    summary.final_pseudo_energy = last.pseudo_energy;
    summary.final_rms_width = last.rms_width;
  }

  std::vector<SeriesColumn> columns;
  if (cfg.outputs.pseudo_energy) columns.push_back(SeriesColumn::pseudo_energy);
  if (cfg.outputs.centroid_width) {
    columns.push_back(SeriesColumn::centroid);
    columns.push_back(SeriesColumn::rms_width);
  }
  if (!columns.empty()) {
    const auto path = out_dir / "series.csv";
    write_series_csv(samples.series, columns, path);
    summary.files.push_back(path);
  }

  if (cfg.outputs.map) {
    write_map_pair(cfg.zetas, samples.first, out_dir, "map_psi1", cfg.colormap, summary);
    write_map_pair(cfg.zetas, samples.second, out_dir, "map_psi2", cfg.colormap, summary);
    if (samples.sites) write_map_pair(cfg.zetas, *samples.sites, out_dir, "map_sites", cfg.colormap, summary);
  }

  if (cfg.outputs.intensities) {
    const Samples snap = model_samples(cfg, psi0, cfg.measure, threads);
    const auto p1 = out_dir / "intensities_psi1.csv";
    const auto p2 = out_dir / "intensities_psi2.csv";
    write_map_csv(cfg.measure, snap.first, p1);
    write_map_csv(cfg.measure, snap.second, p2);
    summary.files.push_back(p1);
    summary.files.push_back(p2);
  }
  return summary;
}

RunSummary run_compare(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, unsigned threads) {
  prepare_directory(out_dir);
  const SpinorField psi0 = initial_spinor(cfg);
  const EvolverKind majorana =
      cfg.evolver == EvolverKind::majorana_reference ? EvolverKind::majorana_reference : EvolverKind::majorana_composed;
  const Evolver maj{majorana, cfg.mu, cfg.cells, cfg.reference_step, cfg.lattice_method};
  const Evolver dirac{EvolverKind::dirac_plus, cfg.mu, cfg.cells, cfg.reference_step, cfg.lattice_method};
  const auto sm = pseudo_energy_series(maj, psi0, cfg.zetas, threads, cfg.kappa_per_mm);
  const auto sd = pseudo_energy_series(dirac, psi0, cfg.zetas, threads, cfg.kappa_per_mm);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < sm.size(); ++i) {
    rows.push_back({sm.zeta()[i], sm.distance_mm(i), sm.pseudo_energies()[i], sd.pseudo_energies()[i]});
  }
  RunSummary summary;
  summary.samples = rows.size();
  const auto path = out_dir / "compare.csv";
  write_table_csv({"zeta", "Z_mm", "pseudo_energy_majorana", "pseudo_energy_dirac"}, rows, path);
  summary.files.push_back(path);
  if (!rows.empty()) summary.final_pseudo_energy = rows.back()[2];
  return summary;
}

}  // namespace majoranon::cli
