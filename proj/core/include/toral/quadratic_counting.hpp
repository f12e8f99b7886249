#pragma once

// Lattice points on a circle embedded in R^d, counted through the reduction
// of the plane-restricted circle equation to x² + P y² = K.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "toral/exact.hpp"
#include "toral/rational_geometry.hpp"

namespace toral {

struct Factorization {
  std::vector<std::pair<BigInt, unsigned>> factors;  // ascending primes
  /// Cofactor left composite when the Pollard budget ran out (1 if complete).
  BigInt unfactored = 1;
  bool complete() const { return unfactored == 1; }
};

/// Trial division by small primes, then Pollard-Brent with a fixed iteration
/// budget per cofactor. Deterministic.
Factorization factorize(const BigInt& n, std::size_t rho_budget = 1u << 22);

struct SquarefreeParts {
  BigInt P;
  BigInt Q;
  /// False when an unfactored cofactor had to be assumed squarefree. The
  /// counting pipeline stays exact either way; only the label "squarefree"
  /// is then unproven.
  bool certified = true;
};

/// n = P·Q² with P squarefree. Throws InvalidArgument for n <= 0.
SquarefreeParts squarefree_decompose(const BigInt& n);

/// τ(|K|). Throws InvalidArgument for K = 0 and ComputationError when |K|
/// cannot be factored.
BigInt divisor_count(const BigInt& k);

/// A x1² + B x2² + 2C x1x2 + 2D x1 + 2E x2 + F = 0 with integer coefficients.
struct ConicForm {
  BigInt A, B, C, D, E, F;

  BigInt discriminant() const { return A * B - C * C; }
  BigInt evaluate(const BigInt& x1, const BigInt& x2) const {
    return A * x1 * x1 + B * x2 * x2 + 2 * C * x1 * x2 + 2 * D * x1 + 2 * E * x2 + F;
  }
};

/// x² + P y² = K with x = (AB - C²) x2 + (AE - CD) and y = Q (A x1 + C x2 + D).
struct NormFormInstance {
  BigInt P;
  BigInt Q;
  BigInt K;
  BigInt delta;  // AB - C² = P Q²
  BigInt shift;  // AE - CD
  bool squarefree_certified = true;
};

NormFormInstance complete_squares(const ConicForm& conic);

/// Every (x, y) with x² + P y² = K, ordered by y then x. Empty for K < 0.
/// Throws InvalidArgument for P < 1 and ComputationError for K > 10^14.
std::vector<std::pair<BigInt, BigInt>> represent_norm_form(const BigInt& p, const BigInt& k);

struct CircleSolution {
  BigInt x, y;    // norm-form representation
  BigInt x1, x2;  // plane coordinates x_{i1}, x_{i2}
  LatticePoint point;
};

struct CircleCountTrace {
  RationalPoint center;
  ExactRational radius_sq;
  PlaneParam plane;
  ConicForm conic;
  /// Common factor that turned the rational conic into the integer one.
  ExactRational scale;
  NormFormInstance norm;
  std::size_t candidates = 0;        // x2 values with x² <= K in the residue class
  std::size_t rejected_norm = 0;     // (K - x²)/P not an integer square
  std::size_t rejected_q = 0;        // y not divisible by Q
  std::size_t rejected_a = 0;        // A x1 + C x2 + D has no integer x1
  std::size_t rejected_lift = 0;     // V0 + x1 V1 + x2 V2 not integral
  std::vector<CircleSolution> solutions;
  /// r_P(K) and τ(K), recorded when 0 < K <= 10^12.
  std::optional<std::size_t> r_p_k;
  std::optional<BigInt> tau_k;
};

struct CircleCount {
  std::size_t count = 0;
  std::vector<LatticePoint> points;  // lexicographic
  CircleCountTrace trace;
};

/// Exact number of points of Z^d on the circle through three non-collinear
/// lattice points.
CircleCount embedded_circle_count(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3);

}  // namespace toral
