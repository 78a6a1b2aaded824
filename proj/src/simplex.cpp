#include "mixedsimplex/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <numeric>
#include <string>

#include "mixedsimplex/error.hpp"

namespace mixedsimplex {
namespace {

std::size_t env_cap(std::size_t fallback) {
  if (const char* v = std::getenv("MIXEDSIMPLEX_MAX_K")) {
    char* end = nullptr;
    const long parsed = std::strtol(v, &end, 10);
    if (end != v && parsed > 0) return std::min<std::size_t>(parsed, kMaxFaceK - 1);
  }
  return fallback;
}

// (n)! for n <= 22 is exact in double.
double factorial(int n) {
  if (n > 22) return std::exp(std::lgamma(n + 1.0));
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

unsigned __int128 factorial128(int n) {
  unsigned __int128 f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

}  // namespace

std::size_t lattice_k_cap() { return env_cap(24); }
std::size_t automaton_k_cap() { return env_cap(20); }

// ---------------------------------------------------------------------------
// SimplexPoint

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::InvalidPoint, "simplex point has no coordinates");
  double sum = 0.0;
  for (double c : coords_) {
    if (!std::isfinite(c) || c < 0.0)
      throw Error(ErrorKind::InvalidPoint, "simplex coordinates must be finite and non-negative");
    sum += c;
  }
  if (std::abs(sum - 1.0) > kRenormalizeTolerance)
    throw Error(ErrorKind::InvalidPoint,
                "simplex coordinates sum to " + std::to_string(sum) + ", expected 1");
  if (sum != 1.0)
    for (double& c : coords_) c /= sum;
}

SimplexPoint SimplexPoint::normalized(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidPoint, "simplex point has no coordinates");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw Error(ErrorKind::InvalidPoint, "weights must be finite and non-negative");
    sum += w;
  }
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw Error(ErrorKind::InvalidPoint, "weights must have a positive finite sum");
  for (double& w : weights) w /= sum;
  return SimplexPoint(Unchecked{}, std::move(weights));
}

SimplexPoint SimplexPoint::vertex(std::size_t K, std::size_t k) {
  if (k >= K) throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
  std::vector<double> c(K, 0.0);
  c[k] = 1.0;
  return SimplexPoint(Unchecked{}, std::move(c));
}

SimplexPoint SimplexPoint::barycenter(std::size_t K) {
  if (K == 0) throw Error(ErrorKind::InvalidPoint, "simplex point has no coordinates");
  return SimplexPoint(Unchecked{}, std::vector<double>(K, 1.0 / static_cast<double>(K)));
}

// ---------------------------------------------------------------------------
// Face

Face::Face(FaceMask mask) : mask_(mask) {
  if (mask == 0) throw Error(ErrorKind::InvalidArgument, "the empty face is not a face");
}

Face Face::from_indices(std::span<const std::size_t> indices) {
  FaceMask m = 0;
  for (std::size_t k : indices) {
    if (k >= kMaxFaceK) throw Error(ErrorKind::KTooLarge, "face index exceeds 64");
    m |= FaceMask{1} << k;
  }
  return Face(m);
}

Face Face::vertex(std::size_t k) {
  if (k >= kMaxFaceK) throw Error(ErrorKind::KTooLarge, "face index exceeds 64");
  return Face(FaceMask{1} << k);
}

Face Face::full(std::size_t K) {
  if (K == 0 || K > kMaxFaceK) throw Error(ErrorKind::KTooLarge, "K must be in [1, 64]");
  return Face(K == 64 ? ~FaceMask{0} : (FaceMask{1} << K) - 1);
}

int Face::size() const noexcept { return std::popcount(mask_); }

bool Face::has_index(std::size_t k) const noexcept {
  return k < kMaxFaceK && ((mask_ >> k) & 1U) != 0;
}

bool Face::is_subface_of(Face other) const noexcept { return (mask_ & ~other.mask_) == 0; }

std::size_t Face::min_alphabet() const noexcept {
  return kMaxFaceK - static_cast<std::size_t>(std::countl_zero(mask_));
}

std::vector<std::size_t> Face::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (FaceMask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// ---------------------------------------------------------------------------
// FaceSet

FaceSet::FaceSet(std::vector<Face> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
}

FaceSet FaceSet::all(std::size_t K) {
  FaceLattice lattice(K);
  FaceSet s;
  s.faces_ = lattice.enumerate();
  return s;
}

FaceSet FaceSet::single(Face f) {
  FaceSet s;
  s.faces_.push_back(f);
  return s;
}

bool FaceSet::contains(Face f) const noexcept {
  return std::binary_search(faces_.begin(), faces_.end(), f);
}

FaceSet FaceSet::unite(const FaceSet& other) const {
  FaceSet out;
  out.faces_.reserve(faces_.size() + other.faces_.size());
  std::set_union(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end(),
                 std::back_inserter(out.faces_));
  return out;
}

FaceSet FaceSet::intersect(const FaceSet& other) const {
  FaceSet out;
  std::set_intersection(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end(),
                        std::back_inserter(out.faces_));
  return out;
}

FaceSet FaceSet::minus(const FaceSet& other) const {
  FaceSet out;
  std::set_difference(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end(),
                      std::back_inserter(out.faces_));
  return out;
}

FaceSet FaceSet::complement(std::size_t K) const {
  for (Face f : faces_)
    if (f.min_alphabet() > K)
      throw Error(ErrorKind::AlphabetMismatch, "face set does not fit in the given alphabet");
  return all(K).minus(*this);
}

bool FaceSet::is_subset_of(const FaceSet& other) const {
  return std::includes(other.faces_.begin(), other.faces_.end(), faces_.begin(), faces_.end());
}

bool FaceSet::disjoint_with(const FaceSet& other) const {
  auto a = faces_.begin();
  auto b = other.faces_.begin();
  while (a != faces_.end() && b != other.faces_.end()) {
    if (*a == *b) return false;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return true;
}

FaceMask FaceSet::symbol_mask() const noexcept {
  FaceMask m = 0;
  for (Face f : faces_) m |= f.mask();
  return m;
}

// ---------------------------------------------------------------------------
// FaceLattice

FaceLattice::FaceLattice(std::size_t K) : K_(K) {
  if (K == 0) throw Error(ErrorKind::InvalidArgument, "K must be positive");
  if (K > lattice_k_cap())
    throw Error(ErrorKind::KTooLarge, "face lattice enumeration is capped at K = " +
                                          std::to_string(lattice_k_cap()));
}

std::vector<Face> FaceLattice::enumerate() const {
  std::vector<Face> out;
  out.reserve(size());
  for_each([&](Face f) { out.push_back(f); });
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

Face face_of(const SimplexPoint& p, double tol) {
  const auto K = p.size();
  if (K > kMaxFaceK) throw Error(ErrorKind::KTooLarge, "faces are limited to K <= 64");
  if (!(tol >= 0.0) || tol >= 1.0 / static_cast<double>(K))
    throw Error(ErrorKind::InvalidArgument, "face tolerance must lie in [0, 1/K)");
  FaceMask m = 0;
  for (std::size_t k = 0; k < K; ++k)
    if (p[k] > tol) m |= FaceMask{1} << k;
  if (m == 0) throw Error(ErrorKind::DegeneratePoint, "every coordinate is below tolerance");
  return Face(m);
}

SimplexPoint restrict_to_face(const SimplexPoint& p, Face f) {
  std::vector<double> c(p.values());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!f.has_index(k)) c[k] = 0.0;
  return SimplexPoint::normalized(std::move(c));
}

SimplexPoint face_centroid(Face f, std::size_t K) {
  if (f.min_alphabet() > K) throw Error(ErrorKind::AlphabetMismatch, "face does not fit in K");
  std::vector<double> c(K, 0.0);
  const double w = 1.0 / f.size();
  for (std::size_t k : f.indices()) c[k] = w;
  return SimplexPoint::normalized(std::move(c));
}

double face_volume(Face f) { return 1.0 / factorial(f.size() - 1); }

double log_face_volume(Face f) { return -std::lgamma(static_cast<double>(f.size())); }

unsigned __int128 ExactMeasure::denominator() { return factorial128(kMaxVertices - 1); }

double ExactMeasure::to_double() const {
  return static_cast<double>(static_cast<long double>(units) /
                             static_cast<long double>(denominator()));
}

ExactMeasure measure_exact(const FaceSet& s) {
  ExactMeasure total;
  const auto denom = ExactMeasure::denominator();
  for (Face f : s) {
    if (f.size() > ExactMeasure::kMaxVertices)
      throw Error(ErrorKind::KTooLarge, "exact measure supports faces of at most 24 vertices");
    total.units += denom / factorial128(f.size() - 1);
  }
  return total;
}

double measure(const FaceSet& s) {
  bool small = std::all_of(s.begin(), s.end(),
                           [](Face f) { return f.size() <= ExactMeasure::kMaxVertices; });
  if (small) return measure_exact(s).to_double();
  double total = 0.0;
  for (Face f : s) total += face_volume(f);
  return total;
}

}  // namespace mixedsimplex
