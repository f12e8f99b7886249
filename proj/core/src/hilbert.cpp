#include <algorithm>
#include <cmath>
#include <vector>

#include "toral/error.hpp"
#include "toral/parallel.hpp"
#include "toral/restriction.hpp"

namespace toral {

HilbertNorm hilbert_truncated_norm(const HilbertOperatorSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("truncation N must be >= 1");
  if (!(std::abs(spec.mu) <= 1.0)) throw InvalidArgument("mu must satisfy |mu| <= 1");
  const double mu = std::abs(spec.mu);  // T_{-mu} = -T_mu
  HilbertNorm out;
  if (mu == 0.0) {
    out.converged = true;
    return out;
  }
  const std::size_t size = 2 * spec.n + 1;
  // Toeplitz kernel k(j) = sin(mu j)/j, k(0) = mu.
  std::vector<double> kernel(size);
  kernel[0] = mu;
  for (std::size_t j = 1; j < size; ++j) kernel[j] = std::sin(mu * static_cast<double>(j)) / static_cast<double>(j);

  std::vector<double> v(size);
  const double sigma = static_cast<double>(size) / 8.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double t = (static_cast<double>(i) - static_cast<double>(spec.n)) / sigma;
    v[i] = std::exp(-0.5 * t * t);
    norm += v[i] * v[i];
  }
  for (auto& x : v) x /= std::sqrt(norm);

  std::vector<double> w(size);
  constexpr std::size_t kRows = 64;
  const std::size_t blocks = (size + kRows - 1) / kRows;
  double prev = 0.0;
  constexpr std::size_t kMaxIterations = 100000;
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    parallel_blocks(blocks, [&](std::size_t b) {
      const std::size_t r1 = std::min(size, (b + 1) * kRows);
      for (std::size_t r = b * kRows; r < r1; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < size; ++c) s += kernel[r > c ? r - c : c - r] * v[c];
        w[r] = s;
      }
    });
    double wn = 0.0;
    for (double x : w) wn += x * x;
    wn = std::sqrt(wn);
    out.norm = wn;
    out.iterations = it;
    if (wn == 0.0) {
      out.converged = true;
      break;
    }
    for (std::size_t i = 0; i < size; ++i) v[i] = w[i] / wn;
    if (it > 1 && std::abs(wn - prev) <= 1e-8 * wn) {
      out.converged = true;
      break;
    }
    prev = wn;
  }
  return out;
}

}  // namespace toral
