#include "majoranon/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "majoranon/errors.hpp"

namespace majoranon {
namespace {

constexpr double kNormalizationTolerance = 1e-9;

std::vector<double> collect(const std::vector<ObservableRecord>& records,
                            std::optional<double> ObservableRecord::*field, const char* name) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!(r.*field)) throw InvalidParameter(std::string("series record lacks ") + name);
    out.push_back(*(r.*field));
  }
  return out;
}

struct Moments {
  double mean;
  double variance;
};

Moments position_moments(std::span<const double> intensity) {
  double total = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    total += intensity[i];
    first += static_cast<double>(i + 1) * intensity[i];
  }
  if (!(total > 0.0)) throw DegenerateInput("field has no intensity to locate");
  const double mean = first / total;
  double second = 0.0;
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    const double d = static_cast<double>(i + 1) - mean;
    second += d * d * intensity[i];
  }
  return {mean, second / total};
}

}  // namespace

ObservableSeries::ObservableSeries(std::optional<double> kappa_per_mm) : kappa_(kappa_per_mm) {
  if (kappa_ && !(*kappa_ > 0.0)) throw InvalidParameter("series kappa must be positive");
}

void ObservableSeries::push_back(double zeta, ObservableRecord record) {
  if (!std::isfinite(zeta)) throw InvalidParameter("series coordinate must be finite");
  if (!zeta_.empty() && !(zeta > zeta_.back())) {
    throw InvalidParameter("series coordinates must be strictly increasing");
  }
  zeta_.push_back(zeta);
  records_.push_back(std::move(record));
}

double ObservableSeries::distance_mm(std::size_t i) const {
  if (!kappa_) throw InvalidParameter("series has no coupling constant to convert zeta to mm");
  return zeta_.at(i) / *kappa_;
}

std::vector<double> ObservableSeries::pseudo_energies() const {
  return collect(records_, &ObservableRecord::pseudo_energy, "pseudo_energy");
}

std::vector<double> ObservableSeries::centroids() const {
  return collect(records_, &ObservableRecord::centroid, "centroid");
}

std::vector<double> ObservableSeries::rms_widths() const {
  return collect(records_, &ObservableRecord::rms_width, "rms_width");
}

double pseudo_energy(const SpinorField& psi) {
  const double p1 = psi.comp1().squaredNorm();
  const double p2 = psi.comp2().squaredNorm();
  if (std::abs(p1 + p2 - 1.0) > kNormalizationTolerance) {
    throw ContractViolation("pseudo_energy needs a normalized spinor, total intensity is " +
                            std::to_string(p1 + p2));
  }
  return p1 - p2;
}

std::vector<double> cell_intensity(const SpinorField& psi) {
  std::vector<double> out(psi.n_cells());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out[i] = std::norm(psi.comp1()[idx]) + std::norm(psi.comp2()[idx]);
  }
  return out;
}

std::vector<double> site_intensity(const LatticeField& field) {
  std::vector<double> out(field.n_sites());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(field.amps()[static_cast<Eigen::Index>(i)]);
  return out;
}

double centroid(std::span<const double> intensity) { return position_moments(intensity).mean; }
double centroid(const SpinorField& psi) { return centroid(cell_intensity(psi)); }
double centroid(const LatticeField& field) { return centroid(site_intensity(field)); }

double rms_width(std::span<const double> intensity) {
  return std::sqrt(std::max(0.0, position_moments(intensity).variance));
}
double rms_width(const SpinorField& psi) { return rms_width(cell_intensity(psi)); }
double rms_width(const LatticeField& field) { return rms_width(site_intensity(field)); }

double peak_to_peak(std::span<const double> values) {
  if (values.empty()) throw InvalidParameter("peak_to_peak of an empty curve");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double detrended_peak_to_peak(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ShapeError("detrending needs two equally long curves with at least 2 samples");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  std::vector<double> residual(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) residual[i] = y[i] - (my + slope * (x[i] - mx));
  return peak_to_peak(residual);
}

std::optional<double> first_minimum(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("first_minimum needs equally long curves");
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] < y[i - 1] && y[i] <= y[i + 1]) {
      // Vertex of the parabola through the three samples.
      const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
      const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
      const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
      const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
      const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
      if (a > 0.0) return std::clamp(-b / (2.0 * a), x0, x2);
      return x1;
    }
  }
  return std::nullopt;
}

double total_variation_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ShapeError("distributions differ in length");
  const double sp = std::accumulate(p.begin(), p.end(), 0.0);
  const double sq = std::accumulate(q.begin(), q.end(), 0.0);
  if (!(sp > 0.0) || !(sq > 0.0)) throw DegenerateInput("distribution with zero mass");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] / sp - q[i] / sq);
  return 0.5 * acc;
}

}  // namespace majoranon
