#pragma once

// Toral eigenfunctions restricted to totally geodesic submanifolds.
//
// For e(x) = Σ c_n e^{in·x} and Σ = {x0 + Σ_j t_j u_j : t ∈ [-1,1]^k}, dσ = |u_1∧…∧u_k| dt,
//   ∫_Σ |e|² dσ = |∧u| Σ_{m,n} c_m c̄_n e^{i(m-n)·x0} Π_j 2 sinc((m-n)·u_j).

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "toral/exact.hpp"
#include "toral/random.hpp"
#include "toral/regions.hpp"
#include "toral/shell.hpp"

namespace toral {

using Complex = std::complex<double>;

class Eigenfunction {
 public:
  /// Support points must lie on the shell and be distinct; Σ|c_n|² must be 1
  /// within 1e-12.
  Eigenfunction(Shell shell, std::vector<LatticePoint> support, std::vector<Complex> coeffs);

  /// Same, rescaling the coefficients to unit norm first.
  static Eigenfunction normalized(Shell shell, std::vector<LatticePoint> support, std::vector<Complex> coeffs);
  /// c_n = 1/√N on the given points.
  static Eigenfunction uniform(Shell shell, std::vector<LatticePoint> support);
  /// Independent complex Gaussian coefficients on the whole shell, normalized.
  static Eigenfunction random(Shell shell, Rng& rng);

  const Shell& shell() const { return shell_; }
  const std::vector<LatticePoint>& support() const { return support_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex evaluate(const std::vector<double>& x) const;

 private:
  Shell shell_;
  std::vector<LatticePoint> support_;
  std::vector<Complex> coeffs_;
};

/// Frame u_1..u_k in normalized form: after relabeling coordinates,
/// u_j = e_j + Σ_{i>k} a_ij e_i with |a_ij| <= 1. Base point x0.
struct GeodesicSubmanifold {
  std::vector<RationalPoint> frame;
  RationalPoint base;

  int dim() const { return frame.empty() ? 0 : static_cast<int>(frame[0].size()); }
  int k() const { return static_cast<int>(frame.size()); }
  /// Throws InvalidArgument unless the frame is in normalized form with
  /// 1 <= |∧u|² <= (d-k+1)^k and |u_j|² <= d-k+1.
  void validate() const;
  double wedge_norm() const;

  /// γ(t) = (t, a t) in d = 2.
  static GeodesicSubmanifold line(const ExactRational& slope);
  /// Frame in normalized form with random rational a_ij of denominator <= 8.
  static GeodesicSubmanifold random(int d, int k, Rng& rng);
};

double sinc(double t);

/// Closed form of ∫_Σ |e|² dσ. Throws InvalidArgument on invariant violations
/// and ComputationError if the sum is not real and nonnegative to 1e-10.
double restriction_norm_sq(const Eigenfunction& e, const GeodesicSubmanifold& s);

/// Tensor Gauss-Legendre quadrature of |e(x(t))|²·|∧u| over [-1,1]^k with
/// `resolution` nodes per axis. Test oracle.
double quadrature_restriction_norm(const Eigenfunction& e, const GeodesicSubmanifold& s, std::size_t resolution);

struct ExtremalConstruction {
  Eigenfunction eigenfunction;
  GeodesicSubmanifold submanifold;
  std::size_t count = 0;
  double norm_sq = 0.0;
  double baseline = 0.0;  // |∧u|·2^k
  double ratio = 0.0;     // norm_sq / baseline
  /// Exact largest |(m - n)·u_j| over member pairs and frame vectors.
  ExactRational max_phase;

  /// sinc(1)^k·count <= ratio <= count (with 1e-12 relative slack).
  bool bracket_holds() const;
};

/// Uniform eigenfunction on a 2D cap with γ = (x1, a x1), a chosen along the
/// members' mean direction (coordinates exchanged when |slope| > 1). Throws
/// InvalidArgument when a member pair has |(m - n)·u| > 1.
ExtremalConstruction build_extremal_cap_2d(const Shell& shell, const std::vector<LatticePoint>& members);

/// Uniform eigenfunction on the members of a band intersection; the band
/// directions are brought to normalized form by the k columns of largest
/// minor. Throws InvalidArgument when a member pair has |(m - n)·u_j| > 1.
ExtremalConstruction build_extremal_band_intersection(const Shell& shell, const std::vector<LatticePoint>& directions,
                                                      const std::vector<LatticePoint>& members);

/// Extremal cap of the coordinate sub-shell Z^{d-k+1} ∩ λS^{d-k} (last k - 1
/// coordinates zero) and Σ = (x1, a_2 x1, …, a_{d-k+1} x1, x2, …, xk).
/// Throws InvalidArgument when the sub-shell is empty or the phase condition
/// fails.
ExtremalConstruction build_extremal_subsphere_cap(const Shell& shell, int k);

struct HemisphereSplit {
  std::vector<LatticePoint> plus;   // a·x' - x_d >= 0
  std::vector<LatticePoint> minus;
  /// Fibers {x_j + a_j x_d = t_j for all j} meeting L+ (resp. L-) more than once.
  std::size_t plus_violations = 0;
  std::size_t minus_violations = 0;
};

/// Requires d - 1 slopes with |a_j| <= 1.
HemisphereSplit hemisphere_split(const Shell& shell, const std::vector<ExactRational>& slopes);

struct SlopeBoundReport {
  ExactRational slope;
  std::int64_t q = 1;
  std::size_t samples = 0;
  double max_norm_sq = 0.0;
  double max_over_q = 0.0;
  /// 4π√(1 + a²): from splitting at the hemisphere and ‖T_{1/q}‖ <= π.
  double derived_bound = 0.0;
};

/// Max of restriction_norm_sq on γ = (x1, (p/q)x1) over `samples` random
/// eigenfunctions, the single frequencies and the extremal cap.
SlopeBoundReport rational_slope_norm_bound(const Shell& shell, const ExactRational& slope, std::size_t samples,
                                           std::uint64_t seed);

struct HilbertOperatorSpec {
  double mu = 0.0;
  std::size_t n = 1;  // indices in [-N, N]
};

struct HilbertNorm {
  double norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value of [sin(μ(t - s))/(t - s)], diagonal μ, by power
/// iteration from a Gaussian vector; stops when successive estimates differ by
/// less than 1e-8 relative.
HilbertNorm hilbert_truncated_norm(const HilbertOperatorSpec& spec);

}  // namespace toral
