#pragma once

// Exact region predicates on a shell: λ^{1/2}-caps, unit bands, dyadic bands
// and ν-transverse band families, with counting and extremal search.
//
// Every membership decision that feeds a count is made in exact rational
// (or exact quadratic-surd) arithmetic; floating point only appears in
// approximate witness coordinates reported for humans.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toral/exact.hpp"
#include "toral/shell.hpp"

namespace toral {

/// Euclidean ball {x : |x - center|² <= radius_sq} intersected with the shell.
struct Cap {
  RationalPoint center;
  ExactRational radius_sq;

  bool contains(std::span<const std::int64_t> x) const;
};

/// Slab {x : |û·(x - anchor)| <= half_width} intersected with the shell.
/// Decided as (u·(x - x0))² <= half_width²·|u|².
struct UnitBand {
  RationalPoint direction;
  RationalPoint anchor;
  ExactRational half_width{1, 2};

  bool contains(std::span<const std::int64_t> x) const;
  void validate() const;
};

/// ν_{k,d}² = (d - k + 1)^{-k}.
ExactRational transversality_nu_sq(int k, int d);

/// k unit bands in dimension d whose directions are ν_{k,d}-transverse.
class BandFamily {
 public:
  /// Throws InvalidArgument unless 1 <= k <= d - 1, dimensions agree, every
  /// band is valid and the family is transverse.
  BandFamily(std::vector<UnitBand> bands, int d);

  const std::vector<UnitBand>& bands() const { return bands_; }
  const ExactRational& nu_sq() const { return nu_sq_; }
  int dim() const { return d_; }
  std::size_t k() const { return bands_.size(); }
  bool contains(std::span<const std::int64_t> x) const;

 private:
  std::vector<UnitBand> bands_;
  ExactRational nu_sq_;
  int d_;
};

struct CountResult {
  std::size_t count = 0;
  std::vector<LatticePoint> members;  // canonical (lexicographic) order
};

CountResult cap_count(const Shell& shell, const Cap& cap);
CountResult band_count(const Shell& shell, const UnitBand& band);
CountResult family_count(const Shell& shell, const BandFamily& family);

/// det[u_i · u_j] = |u_1 ∧ … ∧ u_k|². Degenerate families give 0.
ExactRational wedge_norm_sq(const std::vector<RationalPoint>& frame);

/// wedge_norm_sq(u) >= nu_sq · Π|u_i|².
bool is_transverse(const std::vector<RationalPoint>& frame, const ExactRational& nu_sq);

/// Default squared cap radius for the λ^{1/2}-cap: ⌊√m⌋ (equal to λ when m is
/// a perfect square).
ExactRational default_cap_radius_sq(std::int64_t m);

/// Center of an extremal cap: base + sign·√t_sq·offset. Centers lie exactly on
/// the sphere |c|² = m, so they are usually irrational; this form keeps the
/// witness exact.
struct CapWitness {
  RationalPoint base;
  RationalPoint offset;
  ExactRational t_sq;
  int sign = 1;
  ExactRational radius_sq;

  std::vector<double> center_approx() const;
  /// Exact membership |x - c|² <= radius_sq (uses |c|² = m).
  bool contains(std::span<const std::int64_t> x, std::int64_t m) const;
};

struct MaxCapResult {
  std::size_t count = 0;
  std::optional<CapWitness> witness;
  std::vector<LatticePoint> members;
};

/// Exact maximum of |E ∩ ball(c, r)| over centers c with |c| = λ.
///
/// An optimal cap can be slid until it is extremal for a fixed generic
/// linear functional g; at such a center c the active boundary points T
/// satisfy c ∈ span(T, g), which leaves at most two centers per linearly
/// independent T with |T| <= d - 1. Those centers, plus the centers at
/// single shell points, form a finite candidate set that contains an optimum.
MaxCapResult max_cap_count(const Shell& shell, const ExactRational& radius_sq);

/// Cross-check oracle: best count over a dense set of floating centers on the
/// sphere (uniform angles for d = 2, a Fibonacci lattice for d = 3). Never
/// exceeds max_cap_count except through floating ties.
std::size_t max_cap_count_grid(const Shell& shell, double radius_sq, std::size_t resolution);

struct BandSearchConfig {
  ExactRational half_width{1, 2};
  /// Explicit direction tuples (each of size k); searched exactly over anchors.
  std::vector<std::vector<LatticePoint>> fixed_directions;
  /// Add directions p + q for shell pairs (normals of chords) and p itself.
  bool point_pairs = true;
  /// Add normals of planes through shell triples (d = 3 only, small shells).
  bool triple_normals = true;
  bool axes = true;
  std::size_t max_directions = 4096;
  std::size_t max_tuples = 20000;
};

struct BandSearchResult {
  std::size_t count = 0;
  std::optional<BandFamily> witness;
  std::vector<LatticePoint> members;
  std::size_t tuples_searched = 0;
};

/// Best k-band intersection count over the configured direction tuples. For
/// each tuple the maximum over anchors is exact; over all directions the
/// result is a certified lower bound for A_{k,d,λ} with a verifiable witness.
BandSearchResult max_band_intersection(const Shell& shell, int k, const BandSearchConfig& config);

/// Exact maximum over anchors for one fixed tuple of integer directions.
BandSearchResult max_over_anchors(const Shell& shell, const std::vector<LatticePoint>& directions,
                                  const ExactRational& half_width);

/// Candidate directions used by max_band_intersection (primitive, deduplicated,
/// sorted by squared length then lexicographically, truncated).
std::vector<LatticePoint> candidate_directions(const Shell& shell, const BandSearchConfig& config);

/// Dyadic level of a difference value s = (m - n)·u relative to |u| (c₀ = 1):
/// 0 if |s| <= |u|, otherwise the p with 2^{p-1}|u| < |s| <= 2^p|u|.
int dyadic_level(const ExactRational& s, const ExactRational& u_norm_sq);

struct DyadicPartition {
  LatticePoint anchor;
  RationalPoint direction;
  /// levels[p] = shell indices at level p.
  std::vector<std::vector<std::size_t>> levels;
  /// unit_bands[p] = number of distinct width-|u| bins of s = (m - n)·u used at
  /// level p; bins are sign(s)·⌈|s|/|u|⌉.
  std::vector<std::size_t> unit_bands;
};

/// Partitions the shell by dyadic level of (m - n)·u around the anchor m.
DyadicPartition dyadic_decompose(const Shell& shell, const RationalPoint& u,
                                 std::span<const std::int64_t> anchor);

}  // namespace toral
