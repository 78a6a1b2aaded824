#include "mixedsimplex/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>

#include "mixedsimplex/detail/chunked.hpp"
#include "mixedsimplex/error.hpp"
#include "mixedsimplex/special.hpp"
#include "mixedsimplex/transforms.hpp"

namespace mixedsimplex {
namespace {

constexpr double kGumbelFloor = 1e-300;
constexpr double kGumbelCeil = 1.0 - 0x1.0p-53;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::BadSpec, what);
}

void check_logits(const std::vector<double>& z) {
  require(!z.empty(), "logit vector is empty");
  for (double v : z) require(std::isfinite(v), "logits must be finite");
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

double gumbel(RngState& rng) {
  const double u = std::clamp(rng.uniform(), kGumbelFloor, kGumbelCeil);
  return -std::log(-std::log(u));
}

std::vector<double> perturbed(const std::vector<double>& z, double sigma, RngState& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) v[k] = z[k] + sigma * normal(rng);
  return v;
}

SimplexPoint gumbel_softmax_draw(const std::vector<double>& z, double beta, RngState& rng) {
  std::vector<double> v(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) v[k] = z[k] + gumbel(rng);
  return softmax(LogitVector(std::move(v)), beta);
}

}  // namespace

void validate(const SamplerSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dirichlet>) {
          require(!s.alpha.empty(), "Dirichlet needs at least one concentration");
          for (double a : s.alpha) require(positive(a), "Dirichlet concentrations must be > 0");
        } else if constexpr (std::is_same_v<T, GaussianSoftmax> ||
                             std::is_same_v<T, GaussianSparsemax>) {
          check_logits(s.z);
          require(positive(s.sigma), "sigma must be > 0");
        } else if constexpr (std::is_same_v<T, GumbelSoftmax>) {
          check_logits(s.z);
          require(positive(s.beta), "beta must be > 0");
        } else {
          check_logits(s.z);
          require(positive(s.beta), "beta must be > 0");
          require(s.lambda >= 1.0 && std::isfinite(s.lambda), "lambda must be >= 1");
        }
      },
      spec);
}

std::size_t alphabet_size(const SamplerSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Dirichlet>)
          return s.alpha.size();
        else
          return s.z.size();
      },
      spec);
}

SimplexPoint sample_one(const SamplerSpec& spec, RngState& rng) {
  return std::visit(
      [&rng](const auto& s) -> SimplexPoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dirichlet>) {
          // log X_k = log Gamma(alpha_k + 1) + log(U) / alpha_k keeps small
          // concentrations from underflowing to an all-zero draw.
          std::vector<double> logs(s.alpha.size());
          for (std::size_t k = 0; k < s.alpha.size(); ++k) {
            std::gamma_distribution<double> gamma(s.alpha[k] + 1.0, 1.0);
            const double g = gamma(rng);
            const double u = std::max(rng.uniform(), kGumbelFloor);
            logs[k] = std::log(g) + std::log(u) / s.alpha[k];
          }
          return softmax(LogitVector(std::move(logs)), 1.0);
        } else if constexpr (std::is_same_v<T, GaussianSoftmax>) {
          return softmax(LogitVector(perturbed(s.z, s.sigma, rng)), 1.0);
        } else if constexpr (std::is_same_v<T, GumbelSoftmax>) {
          return gumbel_softmax_draw(s.z, s.beta, rng);
        } else if constexpr (std::is_same_v<T, HardConcrete>) {
          const SimplexPoint relaxed = gumbel_softmax_draw(s.z, s.beta, rng);
          std::vector<double> stretched(relaxed.values());
          for (double& v : stretched) v *= s.lambda;
          return sparsemax(LogitVector(std::move(stretched)));
        } else {
          return sparsemax(LogitVector(perturbed(s.z, s.sigma, rng)));
        }
      },
      spec);
}

std::vector<SimplexPoint> sample(const SamplerSpec& spec, const RngState& rng, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  validate(spec);
  return detail::chunked_generate<SimplexPoint>(
      n, rng, [&spec](RngState& local) { return sample_one(spec, local); });
}

double dirichlet_density(const SimplexPoint& p, const std::vector<double>& alpha) {
  if (alpha.size() != p.size())
    throw Error(ErrorKind::InvalidArgument, "alpha and point have different sizes");
  for (double a : alpha)
    if (!positive(a)) throw Error(ErrorKind::BadSpec, "Dirichlet concentrations must be > 0");
  double alpha_sum = 0.0;
  bool small = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0 && alpha[k] != 1.0)
      throw Error(ErrorKind::BoundaryEvaluation,
                  "Dirichlet density is only defined on the boundary where alpha_k = 1");
    alpha_sum += alpha[k];
    small = small && alpha[k] <= 150.0;
  }
  if (small && alpha_sum <= 150.0) {
    double d = gamma_fn(alpha_sum);
    for (std::size_t k = 0; k < p.size(); ++k) {
      d /= gamma_fn(alpha[k]);
      if (alpha[k] != 1.0) d *= std::pow(p[k], alpha[k] - 1.0);
    }
    return d;
  }
  double log_d = std::lgamma(alpha_sum);
  for (std::size_t k = 0; k < p.size(); ++k) {
    log_d -= std::lgamma(alpha[k]);
    if (alpha[k] != 1.0) log_d += (alpha[k] - 1.0) * std::log(p[k]);
  }
  return std::exp(log_d);
}

double gumbel_softmax_density(const SimplexPoint& p, const std::vector<double>& z, double beta) {
  if (z.size() != p.size())
    throw Error(ErrorKind::InvalidArgument, "logits and point have different sizes");
  if (!positive(beta)) throw Error(ErrorKind::BadSpec, "beta must be > 0");
  check_logits(z);
  for (double y : p.values())
    if (y <= 0.0)
      throw Error(ErrorKind::BoundaryEvaluation,
                  "the concrete density is defined on the relative interior only");
  const std::size_t K = p.size();
  const double lse_z = logsumexp(z);
  std::vector<double> terms(K);
  double log_prod = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double log_pi = z[k] - lse_z;
    const double log_y = std::log(p[k]);
    terms[k] = log_pi - beta * log_y;
    log_prod += log_pi - (beta + 1.0) * log_y;
  }
  const double Kd = static_cast<double>(K);
  return std::exp(std::lgamma(Kd) + (Kd - 1.0) * std::log(beta) - Kd * logsumexp(terms) +
                  log_prod);
}

GaussianSparsemaxK2 gaussian_sparsemax_density_k2(double y, double z, double sigma) {
  if (!positive(sigma)) throw Error(ErrorKind::BadSpec, "sigma must be > 0");
  if (!std::isfinite(z)) throw Error(ErrorKind::BadSpec, "z must be finite");
  if (!(y >= 0.0 && y <= 1.0)) throw Error(ErrorKind::InvalidArgument, "y must lie in [0, 1]");
  const double s = std::numbers::sqrt2 * sigma;
  return {0.5 * (1.0 - std::erf(z / s)), 0.5 * (1.0 + std::erf((z - 1.0) / s)),
          normal_pdf(y, z, sigma)};
}

ScalarGaussian gaussian_sparsemax_scalar(const GaussianSparsemax& spec) {
  if (spec.z.size() != 2)
    throw Error(ErrorKind::BadSpec, "the scalar form exists for K = 2 only");
  return {(spec.z[0] - spec.z[1] + 1.0) / 2.0, spec.sigma / std::numbers::sqrt2};
}

GaussianSparsemax gaussian_sparsemax_from_scalar(double z, double sigma) {
  return GaussianSparsemax{{z, 1.0 - z}, std::numbers::sqrt2 * sigma};
}

}  // namespace mixedsimplex
