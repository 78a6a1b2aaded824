#pragma once

// Entropy, coding length, maximum entropy, KL divergence and mutual
// information for mixed random variables. Everything is in nats; divide by
// log 2 (to_bits) for bits.

#include <map>
#include <string>
#include <vector>

#include "mixedsimplex/mixed_dist.hpp"

namespace mixedsimplex {

double to_bits(double nats);

struct FaceEntropy {
  Face face;
  double mass;
  /// Differential entropy of the conditional inside the face.
  double conditional_entropy;
};

struct EntropyReport {
  /// H(F) = -sum P_F log P_F.
  double discrete_part = 0.0;
  /// H(Y | F) = sum P_F h(Y | F = f).
  double continuous_part = 0.0;
  double total = 0.0;
  std::vector<FaceEntropy> per_face;
};

/// Empirical conditionals need this many samples on faces of dimension >= 1.
inline constexpr std::size_t kMinEmpiricalSamples = 1000;

EntropyReport direct_sum_entropy(const MixedDistribution& d);

/// H(Y|F=edge) for the truncated Gaussian conditional on [0, 1].
double truncated_gaussian_entropy(double z, double sigma);

/// -int_0^1 N(y; z, sigma^2) log N(y; z, sigma^2) dy in closed form.
double gaussian_sparsemax_k2_continuous_entropy(double z, double sigma);

/// Kozachenko-Leonenko nearest-neighbour estimate of the differential
/// entropy of points on `face`, in its dropped-coordinate parametrization.
double nearest_neighbor_entropy(const std::vector<SimplexPoint>& samples, Face face);

/// Code length for a lossless face and N-bit precision inside the face:
/// H + N log 2 E[dim F], in nats.
double coding_entropy(const MixedDistribution& d, int N);

/// E[dim F].
double expected_dimension(const MixedDistribution& d);

struct MaxEntSolution {
  /// g[k-1]: total mass on faces with k vertices.
  std::vector<double> g;
  int N_bits = 0;
  /// Maximum coding entropy, nats.
  double value = 0.0;
};

MaxEntSolution maxent_over_faces(int K, int N);

/// The maximizing distribution: P_F(f) = g(k) / C(K, k), flat in every face.
MixedDistribution maxent_distribution(int K, int N);

/// Generalized Laguerre L_n^{(alpha)}(x) by the three-term recurrence.
/// Throws Overflow if the value leaves double range.
double generalized_laguerre(int n, double alpha, double x);

/// log L_{K-1}^{(1)}(-2^N). The recurrence is rescaled as it runs so only
/// 2^N itself has to be representable; Overflow is thrown when it is not.
double laguerre_maxent_value(int K, int N);

/// KL(p || q) = KL(P_F || Q_F) + E_{P_F}[KL(p_{Y|F} || q_{Y|F})].
/// +infinity when p puts mass on a face q does not.
double kl_divergence(const MixedDistribution& p, const MixedDistribution& q);

struct JointComponent {
  double weight;
  MixedDistribution distribution;
};

/// Mixed Y jointly distributed with a finite Z, keyed by the label of z.
using Joint = std::map<std::string, JointComponent>;

/// I(Y; Z) = I(F; Z) + I(Y; Z | F) for flat conditionals. Throws BadJoint
/// when weights do not sum to one or alphabets differ.
double mutual_information(const Joint& joint);

}  // namespace mixedsimplex
