#pragma once

// Generative stories for random points of the simplex, plus the closed-form
// densities that exist for them.

#include <cstddef>
#include <variant>
#include <vector>

#include "mixedsimplex/rng.hpp"
#include "mixedsimplex/simplex.hpp"

namespace mixedsimplex {

struct Dirichlet {
  std::vector<double> alpha;
};

/// softmax(z + sigma N), N ~ Normal(0, I). Also known as the logistic normal.
struct GaussianSoftmax {
  std::vector<double> z;
  double sigma = 1.0;
};

/// softmax_beta(z + G) with i.i.d. standard Gumbel G.
struct GumbelSoftmax {
  std::vector<double> z;
  double beta = 1.0;
};

/// sparsemax(lambda Y') with Y' ~ GumbelSoftmax(z, beta), lambda >= 1.
struct HardConcrete {
  std::vector<double> z;
  double beta = 1.0;
  double lambda = 1.0;
};

/// sparsemax(z + sigma N), N ~ Normal(0, I).
struct GaussianSparsemax {
  std::vector<double> z;
  double sigma = 1.0;
};

using SamplerSpec =
    std::variant<Dirichlet, GaussianSoftmax, GumbelSoftmax, HardConcrete, GaussianSparsemax>;

/// Throws BadSpec on out-of-domain parameters.
void validate(const SamplerSpec& spec);
std::size_t alphabet_size(const SamplerSpec& spec);

/// One draw. `spec` must already be valid.
SimplexPoint sample_one(const SamplerSpec& spec, RngState& rng);

/// n independent draws. Chunk i of 4096 draws uses rng.substream(i),
/// so the output depends only on (seed, stream), not on the thread count.
std::vector<SimplexPoint> sample(const SamplerSpec& spec, const RngState& rng, std::size_t n);

/// Dirichlet density w.r.t. Lebesgue measure on the dropped-coordinate
/// parametrization. Zero coordinates are allowed only where alpha_k == 1.
double dirichlet_density(const SimplexPoint& p, const std::vector<double>& alpha);

/// Concrete (Gumbel-softmax) density, evaluated in log space.
double gumbel_softmax_density(const SimplexPoint& p, const std::vector<double>& z, double beta);

/// Gaussian-sparsemax on the segment [0, 1]: atoms at 0 and 1 plus a
/// Gaussian interior. `y` is the scalar coordinate, Y = clip(z + sigma N, 0, 1).
struct GaussianSparsemaxK2 {
  double p0;
  double p1;
  double interior_density;
};

GaussianSparsemaxK2 gaussian_sparsemax_density_k2(double y, double z, double sigma);

/// Scalar (z, sigma) governing y_1 of a K = 2 Gaussian-sparsemax sampler:
/// y_1 = clip((z_1 - z_2 + 1)/2 + (sigma/sqrt 2) N, 0, 1).
struct ScalarGaussian {
  double z;
  double sigma;
};
ScalarGaussian gaussian_sparsemax_scalar(const GaussianSparsemax& spec);

/// Inverse of gaussian_sparsemax_scalar: logits (z, 1 - z), noise sqrt(2) sigma.
GaussianSparsemax gaussian_sparsemax_from_scalar(double z, double sigma);

}  // namespace mixedsimplex
