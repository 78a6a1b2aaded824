#include "mixedsimplex/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "mixedsimplex/error.hpp"

namespace mixedsimplex {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kSoftmaxAlphaBand = 1e-6;
constexpr double kBisectionTolerance = 1e-14;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorKind::InvalidArgument, "temperature beta must be positive");
}

double entmax_mass(std::span<const double> z, double alpha, double tau) {
  const double am1 = alpha - 1.0;
  const double expo = 1.0 / am1;
  double s = 0.0;
  for (double zk : z) {
    const double base = 1.0 + am1 * (zk - tau);
    if (base > 0.0) s += std::pow(base, expo);
  }
  return s;
}

}  // namespace

LogitVector::LogitVector(std::vector<double> z) : z_(std::move(z)) {
  if (z_.empty()) throw Error(ErrorKind::InvalidArgument, "logit vector is empty");
  for (double v : z_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "logits must be finite");
}

SimplexPoint softmax(const LogitVector& z, double beta) {
  check_beta(beta);
  const auto v = z.values();
  const double zmax = *std::max_element(v.begin(), v.end());
  std::vector<double> y(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) y[k] = std::exp((v[k] - zmax) / beta);
  return SimplexPoint::normalized(std::move(y));
}

SimplexPoint argmax_indicator(const LogitVector& z) {
  const auto v = z.values();
  const double zmax = *std::max_element(v.begin(), v.end());
  std::vector<double> y(v.size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (zmax - v[k] <= kTieTolerance) y[k] = 1.0;
  return SimplexPoint::normalized(std::move(y));
}

SimplexPoint topk_softmax(const LogitVector& z, std::size_t k, double beta) {
  check_beta(beta);
  if (k < 1 || k > z.size()) throw Error(ErrorKind::InvalidArgument, "top-k requires 1 <= k <= K");
  const auto v = z.values();
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  const double zmax = v[order[0]];
  std::vector<double> y(v.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) y[order[i]] = std::exp((v[order[i]] - zmax) / beta);
  return SimplexPoint::normalized(std::move(y));
}

double sparsemax_threshold(const LogitVector& z) {
  std::vector<double> sorted(z.values().begin(), z.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Support size is the largest k with 1 + k z_(k) > sum_{j<=k} z_(j).
  double cumsum = 0.0;
  double support_sum = sorted[0];
  std::size_t support = 1;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    if (1.0 + static_cast<double>(k + 1) * sorted[k] > cumsum) {
      support = k + 1;
      support_sum = cumsum;
    }
  }
  return (support_sum - 1.0) / static_cast<double>(support);
}

SimplexPoint sparsemax(const LogitVector& z) {
  const double tau = sparsemax_threshold(z);
  std::vector<double> y(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) y[k] = std::max(z[k] - tau, 0.0);
  return SimplexPoint::normalized(std::move(y));
}

double entmax_threshold(const LogitVector& z, double alpha) {
  if (!(alpha > 1.0 + kSoftmaxAlphaBand) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidArgument, "entmax threshold requires alpha > 1");
  const auto v = z.values();
  const double zmax = *std::max_element(v.begin(), v.end());
  // mass(lo) >= 1 (the max coordinate alone contributes 1), mass(hi) == 0.
  double lo = zmax;
  double hi = zmax + 1.0 / (alpha - 1.0);
  for (int it = 0; it < 200 && hi - lo > kBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (entmax_mass(v, alpha, mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SimplexPoint entmax(const LogitVector& z, double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidArgument, "entmax requires alpha >= 1");
  if (alpha - 1.0 <= kSoftmaxAlphaBand) return softmax(z, 1.0);
  if (alpha == 2.0) return sparsemax(z);
  const double tau = entmax_threshold(z, alpha);
  const double am1 = alpha - 1.0;
  std::vector<double> y(z.size(), 0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double base = 1.0 + am1 * (z[k] - tau);
    if (base > 0.0) y[k] = std::pow(base, 1.0 / am1);
  }
  return SimplexPoint::normalized(std::move(y));
}

}  // namespace mixedsimplex
