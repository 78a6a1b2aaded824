#include "mixedsimplex/info_theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

#include "mixedsimplex/error.hpp"
#include "mixedsimplex/special.hpp"

namespace mixedsimplex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TruncatedMoments {
  double mass;
  double mean;
  double variance;
};

TruncatedMoments truncated_moments(double z, double sigma) {
  const double a = -z / sigma;
  const double b = (1.0 - z) / sigma;
  const double m = normal_cdf(b) - normal_cdf(a);
  const double pa = normal_pdf(a);
  const double pb = normal_pdf(b);
  const double shift = (pa - pb) / m;
  return {m, z + sigma * shift, sigma * sigma * (1.0 + (a * pa - b * pb) / m - shift * shift)};
}

double conditional_entropy(const FaceComponent& c) {
  return std::visit(
      [&](const auto& cond) -> double {
        using T = std::decay_t<decltype(cond)>;
        if constexpr (std::is_same_v<T, Flat>) {
          return log_face_volume(c.face);
        } else if constexpr (std::is_same_v<T, TruncatedGaussianK2>) {
          return truncated_gaussian_entropy(cond.z, cond.sigma);
        } else {
          if (c.face.dimension() == 0) return 0.0;
          if (cond.samples.size() < kMinEmpiricalSamples)
            throw Error(ErrorKind::InsufficientSamples,
                        "empirical entropy needs at least 1000 samples per face");
          return nearest_neighbor_entropy(cond.samples, c.face);
        }
      },
      c.conditional);
}

// E_p[log q] for conditionals on the same face.
double cross_log_density(const FaceComponent& p, const FaceComponent& q) {
  if (std::holds_alternative<Flat>(q.conditional)) return -log_face_volume(q.face);
  const auto& tq = std::get<TruncatedGaussianK2>(q.conditional);
  double mean, var;
  if (const auto* tp = std::get_if<TruncatedGaussianK2>(&p.conditional)) {
    const auto mom = truncated_moments(tp->z, tp->sigma);
    mean = mom.mean;
    var = mom.variance;
  } else {
    mean = 0.5;
    var = 1.0 / 12.0;
  }
  const double mq = truncated_moments(tq.z, tq.sigma).mass;
  const double second = var + (mean - tq.z) * (mean - tq.z);
  return -std::log(mq) - 0.5 * std::log(2.0 * std::numbers::pi * tq.sigma * tq.sigma) -
         second / (2.0 * tq.sigma * tq.sigma);
}

bool same_conditional(const ConditionalDensity& a, const ConditionalDensity& b) {
  if (std::holds_alternative<Flat>(a) && std::holds_alternative<Flat>(b)) return true;
  const auto* ta = std::get_if<TruncatedGaussianK2>(&a);
  const auto* tb = std::get_if<TruncatedGaussianK2>(&b);
  return ta && tb && ta->z == tb->z && ta->sigma == tb->sigma;
}

}  // namespace

double to_bits(double nats) { return nats / std::numbers::ln2; }

double gaussian_sparsemax_k2_continuous_entropy(double z, double sigma) {
  const double a = -z / sigma;
  const double b = (1.0 - z) / sigma;
  const double m = normal_cdf(b) - normal_cdf(a);
  // int_a^b t^2 phi(t) dt = m - b phi(b) + a phi(a)
  const double second = m - b * normal_pdf(b) + a * normal_pdf(a);
  return m * std::log(std::sqrt(2.0 * std::numbers::pi) * sigma) + 0.5 * second;
}

double truncated_gaussian_entropy(double z, double sigma) {
  const double m = truncated_moments(z, sigma).mass;
  return gaussian_sparsemax_k2_continuous_entropy(z, sigma) / m + std::log(m);
}

double nearest_neighbor_entropy(const std::vector<SimplexPoint>& samples, Face face) {
  const auto idx = face.indices();
  const std::size_t D = idx.size() - 1;
  const std::size_t n = samples.size();
  if (D == 0) return 0.0;
  if (n < 2) throw Error(ErrorKind::InsufficientSamples, "need at least two samples");
  std::vector<double> pts(n * D);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < D; ++j) pts[i * D + j] = samples[i][idx[j]];
  double sum_log = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t k = 0; k < D; ++k) {
        const double diff = pts[i * D + k] - pts[j * D + k];
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    sum_log += 0.5 * std::log(std::max(best, 1e-300));
  }
  // psi(n) - psi(1) is the harmonic number H_{n-1}.
  double harmonic = 0.0;
  for (std::size_t j = 1; j < n; ++j) harmonic += 1.0 / static_cast<double>(j);
  const double Dd = static_cast<double>(D);
  const double log_ball = 0.5 * Dd * std::log(std::numbers::pi) - std::lgamma(0.5 * Dd + 1.0);
  return harmonic + log_ball + Dd * sum_log / static_cast<double>(n);
}

EntropyReport direct_sum_entropy(const MixedDistribution& d) {
  EntropyReport r;
  for (const auto& c : d.components()) {
    if (c.mass <= 0.0) continue;
    const double h = conditional_entropy(c);
    r.discrete_part -= xlogx(c.mass);
    r.continuous_part += c.mass * h;
    r.per_face.push_back({c.face, c.mass, h});
  }
  r.total = r.discrete_part + r.continuous_part;
  return r;
}

double expected_dimension(const MixedDistribution& d) {
  double e = 0.0;
  for (const auto& c : d.components()) e += c.mass * c.face.dimension();
  return e;
}

double coding_entropy(const MixedDistribution& d, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "bit precision N must be >= 0");
  return direct_sum_entropy(d).total + N * std::numbers::ln2 * expected_dimension(d);
}

namespace {

std::vector<double> maxent_log_weights(int K, int N) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "maximum entropy needs K >= 2");
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "bit precision N must be >= 0");
  std::vector<double> a(K);
  for (int k = 1; k <= K; ++k)
    a[k - 1] = log_binomial(K, k) + N * (k - 1) * std::numbers::ln2 - log_factorial(k - 1);
  return a;
}

}  // namespace

MaxEntSolution maxent_over_faces(int K, int N) {
  const auto a = maxent_log_weights(K, N);
  MaxEntSolution s;
  s.N_bits = N;
  s.value = logsumexp(a);
  s.g.resize(K);
  for (int k = 0; k < K; ++k) s.g[k] = std::exp(a[k] - s.value);
  return s;
}

MixedDistribution maxent_distribution(int K, int N) {
  const auto a = maxent_log_weights(K, N);
  const double z = logsumexp(a);
  FaceLattice lattice(static_cast<std::size_t>(K));
  std::vector<FaceComponent> comps;
  comps.reserve(lattice.size());
  lattice.for_each([&](Face f) {
    const int k = f.size();
    comps.push_back({f, std::exp(a[k - 1] - z - log_binomial(K, k)), Flat{}});
  });
  return MixedDistribution(static_cast<std::size_t>(K), std::move(comps));
}

double generalized_laguerre(int n, double alpha, double x) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Laguerre degree must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) throw Error(ErrorKind::Overflow, "Laguerre value overflows double");
  return cur;
}

double laguerre_maxent_value(int K, int N) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "maximum entropy needs K >= 2");
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "bit precision N must be >= 0");
  const double x = -std::ldexp(1.0, N);
  if (!std::isfinite(x)) throw Error(ErrorKind::Overflow, "2^N overflows double");
  constexpr double alpha = 1.0;
  const int n = K - 1;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (cur > 1e250) {
      prev /= cur;
      log_scale += std::log(cur);
      cur = 1.0;
    }
  }
  if (!std::isfinite(cur) || !(cur > 0.0))
    throw Error(ErrorKind::Overflow, "Laguerre recurrence left double range");
  return std::log(cur) + log_scale;
}

double kl_divergence(const MixedDistribution& p, const MixedDistribution& q) {
  if (p.K() != q.K()) throw Error(ErrorKind::AlphabetMismatch, "distributions differ in K");
  for (const auto* d : {&p, &q})
    for (const auto& c : d->components())
      if (c.mass > 0.0 && std::holds_alternative<Empirical>(c.conditional))
        throw Error(ErrorKind::NoDensityForm, "KL needs closed-form conditionals");
  double kl = 0.0;
  for (const auto& c : p.components()) {
    if (c.mass <= 0.0) continue;
    const auto* qc = q.find(c.face);
    if (qc == nullptr || qc->mass <= 0.0) return kInf;
    kl += c.mass * std::log(c.mass / qc->mass);
    if (!same_conditional(c.conditional, qc->conditional))
      kl += c.mass * (-conditional_entropy(c) - cross_log_density(c, *qc));
  }
  return kl;
}

double mutual_information(const Joint& joint) {
  if (joint.empty()) throw Error(ErrorKind::BadJoint, "joint has no components");
  const std::size_t K = joint.begin()->second.distribution.K();
  double total_weight = 0.0;
  for (const auto& [label, comp] : joint) {
    if (!std::isfinite(comp.weight) || comp.weight < 0.0)
      throw Error(ErrorKind::BadJoint, "weight of '" + label + "' is invalid");
    if (comp.distribution.K() != K) throw Error(ErrorKind::BadJoint, "components differ in K");
    for (const auto& c : comp.distribution.components())
      if (c.mass > 0.0 && !std::holds_alternative<Flat>(c.conditional))
        throw Error(ErrorKind::NoDensityForm, "mutual information needs flat conditionals");
    total_weight += comp.weight;
  }
  if (std::abs(total_weight - 1.0) > MixedDistribution::kMassTolerance)
    throw Error(ErrorKind::BadJoint, "weights of Z do not sum to one");

  std::map<Face, double> marginal;
  for (const auto& [label, comp] : joint)
    for (const auto& c : comp.distribution.components()) marginal[c.face] += comp.weight * c.mass;

  // I(F; Z). Given F = f every conditional is flat on ri(f), and so is their
  // mixture, hence I(Y; Z | F) = 0.
  double info = 0.0;
  for (const auto& [label, comp] : joint) {
    if (comp.weight <= 0.0) continue;
    for (const auto& c : comp.distribution.components())
      if (c.mass > 0.0) info += comp.weight * c.mass * std::log(c.mass / marginal[c.face]);
  }
  return info;
}

}  // namespace mixedsimplex
