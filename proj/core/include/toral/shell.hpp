#pragma once

// Lattice points on the sphere |n|^2 = m in Z^d.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toral/exact.hpp"

namespace toral {

/// Largest squared radius accepted by enumerate_shell. Keeps every pairwise
/// difference norm (<= 4m) and dot product inside 64-bit range.
inline constexpr std::int64_t kMaxShellM = 1'000'000'000'000'000LL;

/// The set E = Z^d ∩ λS^{d-1}, λ² = m, stored flat in lexicographic order.
/// Immutable once built.
class Shell {
 public:
  Shell() = default;

  /// Builds a shell from explicit points. Every point is checked to lie on the
  /// sphere; the list is sorted and must be free of duplicates. Closure under
  /// signed permutations is not re-checked here (see is_symmetric_closed).
  Shell(int d, std::int64_t m, std::vector<LatticePoint> points);

  int dim() const { return d_; }
  std::int64_t m() const { return m_; }
  double lambda() const;
  std::size_t size() const { return d_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return coords_.empty(); }

  std::span<const std::int64_t> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  LatticePoint point_vec(std::size_t i) const {
    auto p = point(i);
    return {p.begin(), p.end()};
  }
  std::vector<LatticePoint> points() const;
  const std::vector<std::int64_t>& flat() const { return coords_; }

  /// Index of p in the canonical order, if present.
  std::optional<std::size_t> index_of(std::span<const std::int64_t> p) const;
  bool contains(std::span<const std::int64_t> p) const { return index_of(p).has_value(); }

  /// True when the point list is closed under coordinate sign flips and
  /// permutations.
  bool is_symmetric_closed() const;

  friend bool operator==(const Shell&, const Shell&) = default;

 private:
  friend Shell enumerate_shell(int d, std::int64_t m);
  struct Raw {};
  Shell(Raw, int d, std::int64_t m, std::vector<std::int64_t> coords)
      : d_(d), m_(m), coords_(std::move(coords)) {}

  int d_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> coords_;
};

/// All n in Z^d with |n|² = m, each once, in lexicographic order.
/// Throws InvalidArgument for d < 2, m < 1 or m > kMaxShellM.
Shell enumerate_shell(int d, std::int64_t m);

/// r_d(m) = |enumerate_shell(d, m)|.
std::size_t representation_count(int d, std::int64_t m);

}  // namespace toral
