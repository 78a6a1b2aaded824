#pragma once

// Mixed random variables on the simplex: a probability mass over faces plus
// a density inside each face, w.r.t. the direct-sum measure.

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "mixedsimplex/rng.hpp"
#include "mixedsimplex/samplers.hpp"
#include "mixedsimplex/simplex.hpp"

namespace mixedsimplex {

/// Uniform density 1/face_volume(f) over ri(f).
struct Flat {};

/// Gaussian N(y_1; z, sigma^2) restricted to the open edge (0, 1) of the
/// K = 2 simplex and renormalized by its mass 1 - P0 - P1.
struct TruncatedGaussianK2 {
  double z;
  double sigma;
};

/// Sample-based conditional with no closed-form density.
struct Empirical {
  std::vector<SimplexPoint> samples;
};

using ConditionalDensity = std::variant<Flat, TruncatedGaussianK2, Empirical>;

struct FaceComponent {
  Face face;
  double mass;
  ConditionalDensity conditional;
};

class MixedDistribution {
 public:
  static constexpr double kMassTolerance = 1e-10;

  /// Validates the invariants: masses are non-negative and sum to one,
  /// faces are distinct and fit in K, truncated Gaussians sit on the edge of
  /// a K = 2 simplex, empirical samples lie on their face.
  MixedDistribution(std::size_t K, std::vector<FaceComponent> components);

  std::size_t K() const noexcept { return K_; }
  /// Components sorted by face.
  const std::vector<FaceComponent>& components() const noexcept { return components_; }
  /// P_F(f); zero for faces without a component.
  double mass(Face f) const;
  const FaceComponent* find(Face f) const;

 private:
  std::size_t K_;
  std::vector<FaceComponent> components_;
};

/// Flat conditionals on every listed face.
MixedDistribution flat_distribution(std::size_t K, const std::map<Face, double>& masses);

/// The K = 2 Gaussian-sparsemax law written over faces: vertex {2} (y_1 = 0)
/// holds P0, vertex {1} holds P1, the edge holds a truncated Gaussian.
MixedDistribution gaussian_sparsemax_k2_distribution(double z, double sigma);

/// Samples binned by face, each face carrying its samples as an Empirical
/// conditional.
MixedDistribution empirical_distribution(const std::vector<SimplexPoint>& samples,
                                         double tol = kDefaultFaceTolerance);

/// Monte Carlo face frequencies.
struct FaceHistogram {
  std::map<Face, std::size_t> counts;
  std::size_t total = 0;
  double tolerance = kDefaultFaceTolerance;

  double probability(Face f) const;
  /// sqrt(P(1-P)/n) at the empirical P.
  double standard_error(Face f) const;
};

FaceHistogram estimate_face_probs(const SamplerSpec& spec, std::size_t n,
                                  double tol, const RngState& rng);

/// P_F(face_of(p)) times the conditional density at p. Throws NoDensityForm
/// for Empirical conditionals with positive mass.
double density(const MixedDistribution& d, const SimplexPoint& p,
               double tol = kDefaultFaceTolerance);

/// Pr{Y in A} for a face-set event A: the sum of P_F over A.
double probability(const MixedDistribution& d, const FaceSet& event);

/// E[Y] = sum_f P_F(f) E[Y | F = f]. Flat and truncated-Gaussian inner
/// expectations are closed form; Empirical ones average n_mc resampled draws.
SimplexPoint expectation(const MixedDistribution& d, std::size_t n_mc, const RngState& rng);

/// Draws from the distribution: a face by P_F, then a point from the
/// conditional.
std::vector<SimplexPoint> sample(const MixedDistribution& d, const RngState& rng, std::size_t n);

/// Mean of a truncated normal on [0, 1].
double truncated_gaussian_mean(double z, double sigma);

}  // namespace mixedsimplex
