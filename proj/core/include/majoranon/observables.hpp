#pragma once

#include <optional>
#include <span>
#include <vector>

#include "majoranon/fields.hpp"

namespace majoranon {

/// Values recorded at one sample of the evolution coordinate. Only the
/// quantities a producer measured are set.
struct ObservableRecord {
  std::optional<double> pseudo_energy;
  std::optional<double> centroid;
  std::optional<double> rms_width;
  std::vector<double> intensity_row;
};

/// Samples of the dimensionless evolution coordinate zeta with their records.
/// When the coupling kappa (mm^-1) is known the physical distance is
/// Z = zeta / kappa.
class ObservableSeries {
 public:
  ObservableSeries() = default;
  explicit ObservableSeries(std::optional<double> kappa_per_mm);

  /// Appends a sample; zeta must be finite and strictly greater than the last one.
  void push_back(double zeta, ObservableRecord record);

  std::size_t size() const { return zeta_.size(); }
  bool empty() const { return zeta_.empty(); }
  const std::vector<double>& zeta() const { return zeta_; }
  const std::vector<ObservableRecord>& records() const { return records_; }
  std::optional<double> kappa_per_mm() const { return kappa_; }

  /// Z in mm for sample i; requires kappa.
  double distance_mm(std::size_t i) const;

  /// Values of one optional field across all records (throws if any is unset).
  std::vector<double> pseudo_energies() const;
  std::vector<double> centroids() const;
  std::vector<double> rms_widths() const;

 private:
  std::optional<double> kappa_;
  std::vector<double> zeta_;
  std::vector<ObservableRecord> records_;
};

/// sum_n |psi_1,n|^2 - |psi_2,n|^2. Input must have unit total intensity
/// (within 1e-9), otherwise ContractViolation.
double pseudo_energy(const SpinorField& psi);

/// Intensity-weighted mean position (cells n = 1..N, sites k = 1..K).
/// Zero fields throw DegenerateInput.
double centroid(const SpinorField& psi);
double centroid(const LatticeField& field);
double centroid(std::span<const double> intensity);

/// Intensity-weighted standard deviation of position.
double rms_width(const SpinorField& psi);
double rms_width(const LatticeField& field);
double rms_width(std::span<const double> intensity);

/// |psi_1,n|^2 + |psi_2,n|^2 per cell.
std::vector<double> cell_intensity(const SpinorField& psi);
/// |a_k|^2 per site.
std::vector<double> site_intensity(const LatticeField& field);

/// max - min of a sampled curve.
double peak_to_peak(std::span<const double> values);

/// max - min after removing the least-squares straight line through (x, y);
/// measures trembling about a drifting mean trajectory.
double detrended_peak_to_peak(std::span<const double> x, std::span<const double> y);

/// Position of the first local minimum of a sampled curve, refined with a
/// parabola through the three neighbouring samples. Returns nullopt when the
/// curve has no interior minimum.
std::optional<double> first_minimum(std::span<const double> x, std::span<const double> y);

/// 0.5 * sum |p_i - q_i| after normalizing both to unit sum.
double total_variation_distance(std::span<const double> p, std::span<const double> q);

}  // namespace majoranon
