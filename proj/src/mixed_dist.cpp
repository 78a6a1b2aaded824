#include "mixedsimplex/mixed_dist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <type_traits>

#include "mixedsimplex/detail/chunked.hpp"
#include "mixedsimplex/error.hpp"
#include "mixedsimplex/special.hpp"

namespace mixedsimplex {
namespace {

void invalid(const std::string& what) { throw Error(ErrorKind::InvalidDistribution, what); }

double edge_mass(double z, double sigma) {
  const auto g = gaussian_sparsemax_density_k2(0.5, z, sigma);
  return 1.0 - g.p0 - g.p1;
}

SimplexPoint flat_draw(Face f, std::size_t K, RngState& rng) {
  std::vector<double> w(K, 0.0);
  for (std::size_t k : f.indices()) w[k] = -std::log(std::max(1.0 - rng.uniform(), 1e-300));
  return SimplexPoint::normalized(std::move(w));
}

SimplexPoint truncated_gaussian_draw(const TruncatedGaussianK2& t, RngState& rng) {
  std::normal_distribution<double> normal(t.z, t.sigma);
  for (;;) {
    const double y = normal(rng);
    if (y > 0.0 && y < 1.0) return SimplexPoint::normalized({y, 1.0 - y});
  }
}

}  // namespace

MixedDistribution::MixedDistribution(std::size_t K, std::vector<FaceComponent> components)
    : K_(K), components_(std::move(components)) {
  if (K == 0 || K > kMaxFaceK) invalid("K must be in [1, 64]");
  std::sort(components_.begin(), components_.end(),
            [](const FaceComponent& a, const FaceComponent& b) { return a.face < b.face; });
  double total = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (i > 0 && components_[i - 1].face == c.face) invalid("duplicate face in distribution");
    if (c.face.min_alphabet() > K) invalid("face does not fit in the alphabet");
    if (!std::isfinite(c.mass) || c.mass < 0.0) invalid("face masses must be non-negative");
    total += c.mass;
    if (const auto* t = std::get_if<TruncatedGaussianK2>(&c.conditional)) {
      if (K != 2 || c.face != Face::full(2))
        invalid("truncated Gaussian conditionals live on the edge of the K = 2 simplex");
      if (!(t->sigma > 0.0) || !std::isfinite(t->z)) invalid("truncated Gaussian needs sigma > 0");
    } else if (const auto* e = std::get_if<Empirical>(&c.conditional)) {
      if (c.mass > 0.0 && e->samples.empty()) invalid("empirical conditional has no samples");
      for (const auto& s : e->samples)
        if (s.size() != K || face_of(s) != c.face)
          invalid("empirical sample does not lie on its face");
    }
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    invalid("face masses sum to " + std::to_string(total) + ", expected 1");
}

const FaceComponent* MixedDistribution::find(Face f) const {
  auto it = std::lower_bound(components_.begin(), components_.end(), f,
                             [](const FaceComponent& c, Face g) { return c.face < g; });
  return (it != components_.end() && it->face == f) ? &*it : nullptr;
}

double MixedDistribution::mass(Face f) const {
  const auto* c = find(f);
  return c ? c->mass : 0.0;
}

MixedDistribution flat_distribution(std::size_t K, const std::map<Face, double>& masses) {
  std::vector<FaceComponent> comps;
  for (const auto& [f, m] : masses) comps.push_back({f, m, Flat{}});
  return MixedDistribution(K, std::move(comps));
}

MixedDistribution gaussian_sparsemax_k2_distribution(double z, double sigma) {
  const auto g = gaussian_sparsemax_density_k2(0.5, z, sigma);
  return MixedDistribution(2, {{Face::vertex(1), g.p0, Flat{}},
                               {Face::vertex(0), g.p1, Flat{}},
                               {Face::full(2), 1.0 - g.p0 - g.p1, TruncatedGaussianK2{z, sigma}}});
}

MixedDistribution empirical_distribution(const std::vector<SimplexPoint>& samples, double tol) {
  if (samples.empty()) invalid("no samples");
  const std::size_t K = samples.front().size();
  std::map<Face, std::vector<SimplexPoint>> bins;
  for (const auto& s : samples) {
    if (s.size() != K) throw Error(ErrorKind::AlphabetMismatch, "samples differ in K");
    const Face f = face_of(s, tol);
    bins[f].push_back(restrict_to_face(s, f));
  }
  std::vector<FaceComponent> comps;
  const double n = static_cast<double>(samples.size());
  for (auto& [f, pts] : bins) {
    const double m = static_cast<double>(pts.size()) / n;
    comps.push_back({f, m, Empirical{std::move(pts)}});
  }
  return MixedDistribution(K, std::move(comps));
}

double FaceHistogram::probability(Face f) const {
  auto it = counts.find(f);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

double FaceHistogram::standard_error(Face f) const {
  if (total == 0) return 0.0;
  const double p = probability(f);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

FaceHistogram estimate_face_probs(const SamplerSpec& spec, std::size_t n, double tol,
                                  const RngState& rng) {
  FaceHistogram h;
  h.tolerance = tol;
  for (const auto& p : sample(spec, rng, n)) ++h.counts[face_of(p, tol)];
  h.total = n;
  return h;
}

double density(const MixedDistribution& d, const SimplexPoint& p, double tol) {
  if (p.size() != d.K()) throw Error(ErrorKind::AlphabetMismatch, "point and distribution differ in K");
  const Face f = face_of(p, tol);
  const auto* c = d.find(f);
  if (c == nullptr || c->mass == 0.0) return 0.0;
  return std::visit(
      [&](const auto& cond) -> double {
        using T = std::decay_t<decltype(cond)>;
        if constexpr (std::is_same_v<T, Flat>) {
          return c->mass / face_volume(f);
        } else if constexpr (std::is_same_v<T, TruncatedGaussianK2>) {
          return c->mass * normal_pdf(p[0], cond.z, cond.sigma) / edge_mass(cond.z, cond.sigma);
        } else {
          throw Error(ErrorKind::NoDensityForm, "empirical conditionals have no density form");
        }
      },
      c->conditional);
}

double probability(const MixedDistribution& d, const FaceSet& event) {
  double total = 0.0;
  for (const auto& c : d.components())
    if (event.contains(c.face)) total += c.mass;
  return total;
}

double truncated_gaussian_mean(double z, double sigma) {
  const double a = -z / sigma;
  const double b = (1.0 - z) / sigma;
  const double m = normal_cdf(b) - normal_cdf(a);
  return z + sigma * (normal_pdf(a) - normal_pdf(b)) / m;
}

SimplexPoint expectation(const MixedDistribution& d, std::size_t n_mc, const RngState& rng) {
  const std::size_t K = d.K();
  std::vector<double> acc(K, 0.0);
  for (std::size_t i = 0; i < d.components().size(); ++i) {
    const auto& c = d.components()[i];
    if (c.mass == 0.0) continue;
    std::vector<double> inner = std::visit(
        [&](const auto& cond) -> std::vector<double> {
          using T = std::decay_t<decltype(cond)>;
          if constexpr (std::is_same_v<T, Flat>) {
            return face_centroid(c.face, K).values();
          } else if constexpr (std::is_same_v<T, TruncatedGaussianK2>) {
            const double m = truncated_gaussian_mean(cond.z, cond.sigma);
            return {m, 1.0 - m};
          } else {
            if (n_mc == 0) throw Error(ErrorKind::InvalidArgument, "n_mc must be >= 1");
            RngState local = rng.substream(i);
            std::vector<double> mean(K, 0.0);
            const std::size_t count = cond.samples.size();
            for (std::size_t j = 0; j < n_mc; ++j) {
              const auto& s = cond.samples[static_cast<std::size_t>(local.uniform() * count)];
              for (std::size_t k = 0; k < K; ++k) mean[k] += s[k];
            }
            for (double& v : mean) v /= static_cast<double>(n_mc);
            return mean;
          }
        },
        c.conditional);
    for (std::size_t k = 0; k < K; ++k) acc[k] += c.mass * inner[k];
  }
  return SimplexPoint::normalized(std::move(acc));
}

std::vector<SimplexPoint> sample(const MixedDistribution& d, const RngState& rng, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  const auto& comps = d.components();
  std::vector<double> cumulative;
  double run = 0.0;
  for (const auto& c : comps) cumulative.push_back(run += c.mass);
  return detail::chunked_generate<SimplexPoint>(n, rng, [&](RngState& local) {
    const double u = local.uniform() * run;
    std::size_t i = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    while (i >= comps.size() || comps[i].mass == 0.0) i = (i == 0 ? comps.size() : i) - 1;
    const auto& c = comps[i];
    return std::visit(
        [&](const auto& cond) -> SimplexPoint {
          using T = std::decay_t<decltype(cond)>;
          if constexpr (std::is_same_v<T, Flat>) {
            return flat_draw(c.face, d.K(), local);
          } else if constexpr (std::is_same_v<T, TruncatedGaussianK2>) {
            return truncated_gaussian_draw(cond, local);
          } else {
            return cond.samples[static_cast<std::size_t>(local.uniform() * cond.samples.size())];
          }
        },
        c.conditional);
  });
}

}  // namespace mixedsimplex
