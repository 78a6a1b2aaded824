#pragma once

// Deterministic maps from logit vectors onto the probability simplex.

#include <span>
#include <vector>

#include "mixedsimplex/simplex.hpp"

namespace mixedsimplex {

/// Finite real scores z ∈ R^K.
class LogitVector {
 public:
  /// Throws InvalidArgument on empty input or non-finite entries.
  explicit LogitVector(std::vector<double> z);

  std::size_t size() const noexcept { return z_.size(); }
  double operator[](std::size_t k) const { return z_[k]; }
  std::span<const double> values() const noexcept { return z_; }

 private:
  std::vector<double> z_;
};

struct EntmaxParams {
  double alpha = 1.5;
  double beta = 1.0;
};

/// exp(z/beta) / sum exp(z/beta), with max subtraction.
SimplexPoint softmax(const LogitVector& z, double beta = 1.0);

/// Uniform over the coordinates within 1e-12 of max(z).
SimplexPoint argmax_indicator(const LogitVector& z);

/// Tempered softmax over the k largest scores; ties at the cut go to the
/// lower index. Remaining coordinates are exactly zero.
SimplexPoint topk_softmax(const LogitVector& z, std::size_t k, double beta = 1.0);

/// Euclidean projection onto the simplex by sorting and thresholding.
SimplexPoint sparsemax(const LogitVector& z);

/// Threshold tau with sparsemax(z) = [z - tau]_+.
double sparsemax_threshold(const LogitVector& z);

/// alpha-entmax, [1 + (alpha-1)(z - tau)]_+^{1/(alpha-1)}. alpha within 1e-6
/// of one falls back to softmax; alpha == 2 uses the exact sparsemax path.
SimplexPoint entmax(const LogitVector& z, double alpha);

/// The normalizing tau of entmax in the same convention, found by bisection
/// on [max z, max z + 1/(alpha-1)]. Requires alpha > 1 + 1e-6.
double entmax_threshold(const LogitVector& z, double alpha);

}  // namespace mixedsimplex
