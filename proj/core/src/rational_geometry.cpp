#include "toral/rational_geometry.hpp"

#include <cmath>

#include "toral/error.hpp"
#include "toral/linalg.hpp"
#include "toral/random.hpp"

namespace toral {
namespace {

void check_dims(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3) {
  if (a1.size() < 2 || a1.size() != a2.size() || a1.size() != a3.size()) {
    throw InvalidArgument("points must share a dimension >= 2");
  }
}

RationalPoint diff(const LatticePoint& p, const LatticePoint& q) {
  RationalPoint r;
  for (std::size_t i = 0; i < p.size(); ++i) r.push_back(to_rational(p[i] - q[i]));
  return r;
}

// Throws on duplicates or collinearity (exact Gram determinant of the edges).
void check_triangle(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3) {
  check_dims(a1, a2, a3);
  if (a1 == a2 || a1 == a3 || a2 == a3) throw InvalidArgument("duplicate points");
  if (determinant(gram({diff(a2, a1), diff(a3, a1)})) == 0) throw InvalidArgument("collinear");
}

}  // namespace

RationalPoint circumcenter(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3) {
  check_triangle(a1, a2, a3);
  const RationalPoint a = diff(a2, a1);
  const RationalPoint b = diff(a3, a1);
  const ExactRational aa = dot(a, a);
  const ExactRational ab = dot(a, b);
  const ExactRational bb = dot(b, b);
  RationalPoint u(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) u[i] = b[i] - ab / aa * a[i];
  // X(t) is equidistant from A1 and A2 for every t; equidistance from A1 and
  // A3 reads (X - A1)·b = |b|²/2.
  const ExactRational t = (bb - ab) / (2 * dot(u, b));
  RationalPoint x(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    x[i] = (to_rational(a1[i]) + to_rational(a2[i])) / 2 + t * u[i];
  }
  return x;
}

BigInt max_height(const RationalPoint& p) {
  BigInt h = 1;
  for (const auto& c : p) {
    BigInt hc = height(c);
    if (hc > h) h = hc;
  }
  return h;
}

RationalPoint PlaneParam::at(const ExactRational& x1, const ExactRational& x2) const {
  RationalPoint r(v0.size());
  for (std::size_t i = 0; i < v0.size(); ++i) r[i] = v0[i] + x1 * v1[i] + x2 * v2[i];
  return r;
}

PlaneParam plane_through(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3) {
  check_triangle(a1, a2, a3);
  const RationalPoint a = diff(a2, a1);
  const RationalPoint b = diff(a3, a1);
  const std::size_t d = a.size();
  for (std::size_t r1 = 0; r1 < d; ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < d; ++r2) {
      const ExactRational det = a[r1] * b[r2] - b[r1] * a[r2];
      if (det == 0) continue;
      // Inverse of the 2×2 submatrix [[a_r1, b_r1], [a_r2, b_r2]].
      const ExactRational inv[2][2] = {{b[r2] / det, -b[r1] / det}, {-a[r2] / det, a[r1] / det}};
      PlaneParam p;
      p.i1 = static_cast<int>(r1) + 1;
      p.i2 = static_cast<int>(r2) + 1;
      p.v0.resize(d);
      p.v1.resize(d);
      p.v2.resize(d);
      const ExactRational s1 = to_rational(a1[r1]);
      const ExactRational s2 = to_rational(a1[r2]);
      for (std::size_t i = 0; i < d; ++i) {
        // Row i of M·M_sub⁻¹.
        const ExactRational c1 = a[i] * inv[0][0] + b[i] * inv[1][0];
        const ExactRational c2 = a[i] * inv[0][1] + b[i] * inv[1][1];
        p.v1[i] = c1;
        p.v2[i] = c2;
        p.v0[i] = to_rational(a1[i]) - c1 * s1 - c2 * s2;
      }
      return p;
    }
  }
  throw InvalidArgument("collinear");
}

HeightPropertyReport height_properties_check(const ExactRational& x, const ExactRational& y) {
  HeightPropertyReport r;
  r.h_x = height(x);
  r.h_y = height(y);
  r.h_sum = height(x + y);
  r.h_product = height(x * y);
  r.negation = height(-x) == r.h_x;
  r.inversion = x == 0 || height(1 / x) == r.h_x;
  r.sum = r.h_sum <= 2 * r.h_x * r.h_y;
  r.product = r.h_product <= r.h_x * r.h_y;
  return r;
}

HeightAudit circumcenter_height_audit(int d, const std::vector<std::int64_t>& bounds, std::size_t samples,
                                      std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("dimension must be >= 2");
  if (bounds.empty() || samples == 0) throw InvalidArgument("empty height audit");
  HeightAudit audit;
  Rng rng(seed);
  for (auto bound : bounds) {
    if (bound < 1) throw InvalidArgument("coordinate bound must be >= 1");
    HeightAuditRow row{bound, 0, 1};
    auto draw = [&] {
      LatticePoint p(static_cast<std::size_t>(d));
      for (auto& c : p) c = rng.uniform_int(-bound, bound);
      return p;
    };
    while (row.samples < samples) {
      LatticePoint p = draw();
      LatticePoint q = draw();
      LatticePoint r = draw();
      if (p == q || p == r || q == r) continue;
      if (determinant(gram({diff(q, p), diff(r, p)})) == 0) continue;
      BigInt h = max_height(circumcenter(p, q, r));
      if (h > row.max_height) row.max_height = h;
      ++row.samples;
    }
    audit.rows.push_back(row);
  }
  if (audit.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(audit.rows.size());
    for (const auto& row : audit.rows) {
      const double lx = std::log(static_cast<double>(row.coord_bound));
      const double ly = std::log(row.max_height.get_d());
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    audit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return audit;
}

}  // namespace toral
