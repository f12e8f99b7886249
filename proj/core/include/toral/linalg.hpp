#pragma once

// Small dense exact linear algebra over Q (Gaussian elimination on mpq).

#include <optional>
#include <vector>

#include "toral/exact.hpp"

namespace toral {

using RationalMatrix = std::vector<std::vector<ExactRational>>;

ExactRational determinant(RationalMatrix a);

/// Row rank of a (rows may have any common length).
std::size_t rank(RationalMatrix a);

/// Solves a x = b for square nonsingular a; nullopt when singular.
std::optional<std::vector<ExactRational>> solve(RationalMatrix a, std::vector<ExactRational> b);

/// Gram matrix [v_i · v_j].
RationalMatrix gram(const std::vector<RationalPoint>& vs);

}  // namespace toral
