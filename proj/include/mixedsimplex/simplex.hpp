#pragma once

// Points of the probability simplex, its face lattice, and the direct-sum
// measure of face-set regions.
//
// A face is identified with the non-empty index set I ⊆ [K] of the
// coordinates allowed to be positive. Volumes use the dropped-coordinate
// parametrization: the relative interior of a face with k vertices is
// measured as a subset of R^{k-1}, so its volume is 1/(k-1)!. Vertices get
// the counting measure.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mixedsimplex {

inline constexpr double kDefaultFaceTolerance = 1e-9;
inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-9;

/// Largest alphabet a Face bitmask can address.
inline constexpr std::size_t kMaxFaceK = 64;

/// Cap on K for operations that enumerate all 2^K - 1 faces (default 24,
/// overridable through MIXEDSIMPLEX_MAX_K).
std::size_t lattice_k_cap();

/// Cap on K for automata (default 20, overridable through MIXEDSIMPLEX_MAX_K).
std::size_t automaton_k_cap();

class SimplexPoint {
 public:
  /// Accepts finite non-negative coordinates whose sum is within 1e-9 of
  /// one and renormalizes them; anything else throws InvalidPoint.
  explicit SimplexPoint(std::vector<double> coords);

  /// Scales a non-negative, non-zero vector onto the simplex.
  static SimplexPoint normalized(std::vector<double> weights);
  static SimplexPoint vertex(std::size_t K, std::size_t k);
  static SimplexPoint barycenter(std::size_t K);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  bool operator==(const SimplexPoint&) const = default;

 private:
  struct Unchecked {};
  SimplexPoint(Unchecked, std::vector<double> coords) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

using FaceMask = std::uint64_t;

class Face {
 public:
  /// Throws InvalidArgument on the empty mask.
  explicit Face(FaceMask mask);

  /// Zero-based indices.
  static Face from_indices(std::span<const std::size_t> indices);
  static Face vertex(std::size_t k);
  static Face full(std::size_t K);

  FaceMask mask() const noexcept { return mask_; }
  /// Number of vertices |I|.
  int size() const noexcept;
  int dimension() const noexcept { return size() - 1; }
  bool has_index(std::size_t k) const noexcept;
  /// True iff this face's index set is a subset of `other`'s.
  bool is_subface_of(Face other) const noexcept;
  /// Largest index + 1; the smallest alphabet this face fits in.
  std::size_t min_alphabet() const noexcept;
  std::vector<std::size_t> indices() const;

  auto operator<=>(const Face&) const = default;

 private:
  FaceMask mask_;
};

/// Finite set of faces, kept sorted and duplicate-free. Complement is taken
/// relative to the full lattice of a given K.
class FaceSet {
 public:
  FaceSet() = default;
  explicit FaceSet(std::vector<Face> faces);

  static FaceSet all(std::size_t K);
  static FaceSet single(Face f);

  bool empty() const noexcept { return faces_.empty(); }
  std::size_t size() const noexcept { return faces_.size(); }
  bool contains(Face f) const noexcept;
  const std::vector<Face>& faces() const noexcept { return faces_; }
  auto begin() const noexcept { return faces_.begin(); }
  auto end() const noexcept { return faces_.end(); }

  FaceSet unite(const FaceSet& other) const;
  FaceSet intersect(const FaceSet& other) const;
  FaceSet minus(const FaceSet& other) const;
  FaceSet complement(std::size_t K) const;
  bool is_subset_of(const FaceSet& other) const;
  bool disjoint_with(const FaceSet& other) const;
  /// Bitwise OR of all member index sets; 0 for the empty set.
  FaceMask symbol_mask() const noexcept;

  bool operator==(const FaceSet&) const = default;
  auto operator<=>(const FaceSet&) const = default;

 private:
  std::vector<Face> faces_;
};

/// All non-empty faces of the (K-1)-simplex, ordered by inclusion.
class FaceLattice {
 public:
  /// Throws KTooLarge above lattice_k_cap().
  explicit FaceLattice(std::size_t K);

  std::size_t K() const noexcept { return K_; }
  std::uint64_t size() const noexcept { return (FaceMask{1} << K_) - 1; }
  std::vector<Face> enumerate() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    const FaceMask last = (FaceMask{1} << K_) - 1;
    for (FaceMask m = 1; m <= last; ++m) fn(Face(m));
  }

  static bool contains(Face f, Face g) noexcept { return f.is_subface_of(g); }

 private:
  std::size_t K_;
};

/// Face whose index set is {k | p_k > tol}. Requires 0 <= tol < 1/K.
Face face_of(const SimplexPoint& p, double tol = kDefaultFaceTolerance);

/// Zeroes coordinates outside `f` and renormalizes.
SimplexPoint restrict_to_face(const SimplexPoint& p, Face f);

/// Uniform point of the face (its barycenter) in a K-dimensional embedding.
SimplexPoint face_centroid(Face f, std::size_t K);

/// Direct-sum volume of ri(f): 1/(|I|-1)!.
double face_volume(Face f);
double log_face_volume(Face f);

/// Direct-sum measure held as an integer multiple of 1/23!, which makes
/// sums over faces with at most 24 vertices exact.
struct ExactMeasure {
  static constexpr int kMaxVertices = 24;
  unsigned __int128 units = 0;

  static unsigned __int128 denominator();
  double to_double() const;

  ExactMeasure operator+(ExactMeasure o) const { return {units + o.units}; }
  bool operator==(const ExactMeasure&) const = default;
  auto operator<=>(const ExactMeasure&) const = default;
};

/// Throws KTooLarge if a member face has more than 24 vertices.
ExactMeasure measure_exact(const FaceSet& s);

/// Direct-sum measure: sum of face volumes over the set.
double measure(const FaceSet& s);

}  // namespace mixedsimplex
