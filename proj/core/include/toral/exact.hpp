#pragma once

// Exact integer/rational helpers shared by every module. Arbitrary precision
// comes from GMP; this header adds the few predicates the geometry needs on
// top of it (surd signs, integer square roots, heights).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace toral {

using BigInt = mpz_class;
using ExactRational = mpq_class;
using RationalPoint = std::vector<ExactRational>;

/// Integer lattice vector; coordinates are exact.
using LatticePoint = std::vector<std::int64_t>;

/// Parses "p/q", "p" or "-p/q". The result is canonicalized (reduced, q > 0).
ExactRational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const ExactRational& x);

/// Parses a comma separated integer vector such as "3,4,0".
LatticePoint parse_lattice_point(std::string_view text);

/// Height H(p/q) = max(|p|, |q|) of the reduced form; H(0) = 1.
BigInt height(const ExactRational& x);

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);
BigInt isqrt(const BigInt& n);

/// True when n >= 0 is a perfect square; writes the root to *root.
bool is_square(std::int64_t n, std::int64_t* root = nullptr);
bool is_square(const BigInt& n, BigInt* root = nullptr);

/// Sign (-1, 0, 1) of a + b*sqrt(s) for rational s >= 0, decided exactly.
int sign_a_plus_b_sqrt(const ExactRational& a, const ExactRational& b,
                       const ExactRational& s);

/// Sign of a + b*sqrt(s1) + c*sqrt(s2) for rational s1, s2 >= 0, decided exactly.
int sign_sum_two_surds(const ExactRational& a, const ExactRational& b, const ExactRational& s1,
                       const ExactRational& c, const ExactRational& s2);

/// Sign of the difference t - a*sqrt(s) for rational t, a and s >= 0.
inline int compare_with_surd(const ExactRational& t, const ExactRational& a,
                             const ExactRational& s) {
  return sign_a_plus_b_sqrt(t, -a, s);
}

inline BigInt to_big(std::int64_t v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

inline ExactRational to_rational(std::int64_t v) { return ExactRational(to_big(v)); }

RationalPoint to_rational_point(std::span<const std::int64_t> p);

/// Exact dot product of two rational vectors of equal length.
ExactRational dot(const RationalPoint& a, const RationalPoint& b);

/// Exact dot product of lattice vectors, computed in 128-bit.
__int128 dot128(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Squared Euclidean norm of a lattice vector (128-bit).
__int128 norm_sq128(std::span<const std::int64_t> a);

BigInt from_int128(__int128 v);

/// Greatest common divisor of |a| and |b| (gcd(0, 0) = 0).
std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Divides an integer vector by the gcd of its entries and fixes the sign so
/// the first nonzero entry is positive. Zero vectors are returned unchanged.
LatticePoint primitive_direction(LatticePoint v);

/// Lexicographic comparison of integer spans.
bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

}  // namespace toral
