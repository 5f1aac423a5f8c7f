#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dorm/dynamics.hpp"
#include "dorm/stats.hpp"

namespace dorm {

namespace {

constexpr double kBandwidthFloor = 1e-4;

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.empty()) throw Error(Errc::EmptySamples, "bandwidth of an empty sample");
  const auto n = static_cast<double>(samples.size());
  double sigma = 0.0;
  if (samples.size() > 1) {
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    sigma = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> copy(samples.begin(), samples.end());
  const double iqr = (quantile(copy, 0.75) - quantile(copy, 0.25)) / 1.34;
  double spread = std::min(sigma, iqr);
  if (spread <= 0.0) spread = std::max(sigma, iqr);
  return std::max(0.9 * spread * std::pow(n, -0.2), kBandwidthFloor);
}

KdeModel::KdeModel(std::vector<double> samples, std::optional<double> bandwidth, std::optional<Interval> reflect)
    : samples_(std::move(samples)), bandwidth_(0.0), reflect_(reflect) {
  if (samples_.empty()) throw Error(Errc::EmptySamples, "KDE needs at least one sample");
  bandwidth_ = bandwidth ? *bandwidth : silverman_bandwidth(samples_);
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw Error(Errc::NonPositiveBandwidth, "bandwidth " + std::to_string(bandwidth_));
  }
  if (reflect_ && !(reflect_->hi > reflect_->lo)) throw std::invalid_argument("empty KDE support");
}

double KdeModel::evaluate(double x) const {
  const double h = bandwidth_;
  double sum = 0.0;
  if (!reflect_) {
    for (double xi : samples_) sum += std_normal_pdf((x - xi) / h);
    return sum / (static_cast<double>(samples_.size()) * h);
  }
  const double lo = reflect_->lo;
  const double hi = reflect_->hi;
  if (x < lo || x > hi) return 0.0;
  // Repeated reflection across both walls places images of x_i at
  // lo + 2kL +/- (x_i - lo); enough k to cover 12 bandwidths either side.
  const double len = hi - lo;
  const int reach = static_cast<int>(std::ceil(12.0 * h / (2.0 * len))) + 1;
  for (double xi : samples_) {
    const double u = xi - lo;
    for (int k = -reach; k <= reach; ++k) {
      const double base = lo + 2.0 * k * len;
      sum += std_normal_pdf((x - (base + u)) / h) + std_normal_pdf((x - (base - u)) / h);
    }
  }
  return sum / (static_cast<double>(samples_.size()) * h);
}

Interval KdeModel::grid_range() const {
  if (reflect_) return *reflect_;
  auto [mn, mx] = std::minmax_element(samples_.begin(), samples_.end());
  return {*mn - 4.0 * bandwidth_, *mx + 4.0 * bandwidth_};
}

std::vector<std::pair<double, double>> KdeModel::grid_export(std::size_t n_points) const {
  std::vector<std::pair<double, double>> grid;
  if (n_points == 0) return grid;
  const auto range = grid_range();
  grid.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = n_points == 1 ? 0.5 * (range.lo + range.hi)
                                   : range.lo + (range.hi - range.lo) * static_cast<double>(i) /
                                                    static_cast<double>(n_points - 1);
    grid.emplace_back(x, evaluate(x));
  }
  return grid;
}

KdeModel gaussian_kde(std::vector<double> samples, std::optional<double> bandwidth, std::optional<Interval> reflect) {
  return KdeModel(std::move(samples), bandwidth, reflect);
}

}  // namespace dorm
