#include "toral/band3d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/math/constants/constants.hpp>

#include "toral/convex_hull.hpp"
#include "toral/error.hpp"
#include "toral/parallel.hpp"
#include "toral/quadratic_counting.hpp"

namespace toral {
namespace {

const HighFloat kPi = boost::math::constants::pi<HighFloat>();

HighFloat to_high(const ExactRational& q) {
  return HighFloat(q.get_num().get_str()) / HighFloat(q.get_den().get_str());
}

ExactRational axis_norm_sq(const LatticePoint& v) { return ExactRational(from_int128(norm_sq128(v))); }

std::array<HighFloat, 3> frame_vector(const std::array<HighFloat, 3>& a, int which) {
  // Orthonormal w1, w2 perpendicular to the unit vector a.
  int e = 0;
  for (int i = 1; i < 3; ++i) {
    if (abs(a[static_cast<std::size_t>(i)]) < abs(a[static_cast<std::size_t>(e)])) e = i;
  }
  std::array<HighFloat, 3> w1{0, 0, 0};
  w1[static_cast<std::size_t>(e)] = 1;
  const HighFloat proj = a[static_cast<std::size_t>(e)];
  for (std::size_t i = 0; i < 3; ++i) w1[i] -= proj * a[i];
  const HighFloat n = sqrt(w1[0] * w1[0] + w1[1] * w1[1] + w1[2] * w1[2]);
  for (auto& c : w1) c /= n;
  if (which == 1) return w1;
  return {a[1] * w1[2] - a[2] * w1[1], a[2] * w1[0] - a[0] * w1[2], a[0] * w1[1] - a[1] * w1[0]};
}

HighFloat hdot(const std::array<HighFloat, 3>& a, std::span<const std::int64_t> x) {
  return a[0] * HighFloat(x[0]) + a[1] * HighFloat(x[1]) + a[2] * HighFloat(x[2]);
}

void check_depth(std::int64_t m, const HighFloat& h) {
  if (m < 1) throw InvalidArgument("m must be positive");
  const HighFloat lambda = sqrt(HighFloat(m));
  if (h < 0 || h > lambda - 1) throw InvalidArgument("H must satisfy 0 <= H <= lambda - 1");
}

}  // namespace

ExactRational tetra_volume(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                           const LatticePoint& d) {
  for (const auto* p : {&a, &b, &c, &d}) {
    if (p->size() != 3) throw InvalidArgument("tetra_volume expects points in Z^3");
  }
  __int128 det = orient3(d, a, b, c);
  if (det < 0) det = -det;
  ExactRational v(from_int128(det), BigInt(6));
  v.canonicalize();
  return v;
}

bool coplanar(const std::vector<LatticePoint>& points) { return affine_rank(points) <= 2; }

BandProfile3D BandProfile3D::from_depth(std::int64_t m, const ExactRational& h) {
  BandProfile3D p{m, -h - 1, 1};
  p.validate();
  return p;
}

BandProfile3D BandProfile3D::at_height(std::int64_t m, const ExactRational& a) {
  BandProfile3D p{m, a, 0};
  p.validate();
  return p;
}

void BandProfile3D::validate() const {
  if (m < 1) throw InvalidArgument("m must be positive");
  const ExactRational mm = to_rational(m);
  if (sign_a_plus_b_sqrt(alpha, beta, mm) < 0) throw InvalidArgument("band lower height must be >= 0");
  // ℓ + 1 <= √m.
  if (sign_a_plus_b_sqrt(-alpha - 1, 1 - beta, mm) < 0) throw InvalidArgument("band must satisfy lower + 1 <= lambda");
}

HighFloat BandProfile3D::lambda() const { return sqrt(HighFloat(m)); }
HighFloat BandProfile3D::lower() const { return to_high(alpha) + to_high(beta) * lambda(); }
HighFloat BandProfile3D::depth() const { return lambda() - 1 - lower(); }

HighFloat BandProfile3D::radius() const {
  const HighFloat l = lower();
  const HighFloat r2 = HighFloat(m) - l * l;
  return r2 > 0 ? sqrt(r2) : HighFloat(0);
}

HighFloat BandProfile3D::inner_radius() const {
  const HighFloat l = lower() + 1;
  const HighFloat r2 = HighFloat(m) - l * l;
  return r2 > 0 ? sqrt(r2) : HighFloat(0);
}

void Band3D::validate() const {
  profile.validate();
  if (axis.size() != 3 || std::all_of(axis.begin(), axis.end(), [](auto c) { return c == 0; })) {
    throw InvalidArgument("band axis must be a nonzero vector in Z^3");
  }
}

bool Band3D::contains(std::span<const std::int64_t> x) const {
  if (x.size() != 3) throw InvalidArgument("band membership expects a point in Z^3");
  const ExactRational t(from_int128(dot128(axis, x)));
  const ExactRational n = axis_norm_sq(axis);
  const ExactRational mn = to_rational(profile.m) * n;
  // ℓ|v| <= t <= (ℓ + 1)|v| with ℓ = α + β√m and |v| = √n.
  if (sign_sum_two_surds(t, -profile.alpha, n, -profile.beta, mn) < 0) return false;
  return sign_sum_two_surds(-t, profile.alpha + 1, n, profile.beta, mn) >= 0;
}

std::array<HighFloat, 3> Band3D::unit_axis() const {
  const HighFloat n = sqrt(HighFloat(axis[0]) * axis[0] + HighFloat(axis[1]) * axis[1] + HighFloat(axis[2]) * axis[2]);
  return {HighFloat(axis[0]) / n, HighFloat(axis[1]) / n, HighFloat(axis[2]) / n};
}

Band3D band_through(std::int64_t m, LatticePoint axis, std::span<const std::int64_t> x) {
  Band3D probe{BandProfile3D::equatorial(m), axis};
  probe.validate();
  if (norm_sq128(x) != m) throw InvalidArgument("point is not on the sphere");
  __int128 t = dot128(axis, x);
  if (t < 0) {
    for (auto& c : axis) c = -c;
    t = -t;
  }
  const BigInt tt = from_int128(t);
  const BigInt n = from_int128(norm_sq128(axis));
  // k = ⌈t/√n⌉: smallest k >= 0 with k²n >= t².
  BigInt k = isqrt(BigInt(tt * tt / n));
  while (k * k * n < tt * tt) ++k;
  BigInt l = k - 1;
  if (l < 0) l = 0;
  Band3D band{BandProfile3D{m, ExactRational(l), 0}, axis};
  if ((l + 1) * (l + 1) > BigInt(m)) band.profile = BandProfile3D::from_depth(m, 0);
  band.validate();
  if (!band.contains(x)) throw ComputationError("band_through lost its point");
  return band;
}

BandGeometry band_radius_and_width(std::int64_t m, const HighFloat& h) {
  check_depth(m, h);
  const HighFloat lambda = sqrt(HighFloat(m));
  const HighFloat lo = lambda - h - 1;
  const HighFloat hi = lambda - h;
  BandGeometry g;
  g.R = sqrt(HighFloat(m) - lo * lo);
  const HighFloat r0sq = HighFloat(m) - hi * hi;
  g.R0 = r0sq > 0 ? sqrt(r0sq) : HighFloat(0);
  g.spherical_width = lambda * (acos(lo / lambda) - acos(hi / lambda));
  g.chord = sqrt(1 + (g.R - g.R0) * (g.R - g.R0));
  g.zone_area = 2 * kPi * lambda;
  return g;
}

HighFloat sector_area_profile(std::int64_t m, const HighFloat& h, const HighFloat& theta, const HighFloat& t) {
  const auto g = band_radius_and_width(m, h);
  const HighFloat lambda = sqrt(HighFloat(m));
  const HighFloat c = lambda - h - t;
  const HighFloat r = g.R0 + (g.R - g.R0) * t;
  return theta / 2 * (HighFloat(m) - c * c) - r * r * sin(theta) / 2;
}

HighFloat sector_hull_volume(std::int64_t m, const HighFloat& h, const HighFloat& theta) {
  if (!(theta > 0 && theta < 1)) throw InvalidArgument("theta must lie in (0, 1)");
  const auto g = band_radius_and_width(m, h);
  const HighFloat lambda = sqrt(HighFloat(m));
  // ∫(λ² - (λ-H-t)²)dt = 2λH - H² + λ - H - 1/3;  ∫(R0 + (R-R0)t)²dt = (R² + R·R0 + R0²)/3.
  const HighFloat first = 2 * lambda * h - h * h + lambda - h - HighFloat(1) / 3;
  const HighFloat second = g.R * g.R + g.R * g.R0 + g.R0 * g.R0;
  return theta / 2 * first - sin(theta) / 6 * second;
}

HighFloat north_pole_distance(const Band3D& band, std::span<const std::int64_t> x) {
  band.validate();
  if (norm_sq128(x) != band.profile.m) throw InvalidArgument("point is not on the sphere");
  if (!band.contains(x)) throw InvalidArgument("point is not on the band");
  const HighFloat lambda = band.profile.lambda();
  HighFloat c = hdot(band.unit_axis(), x) / lambda;
  if (c > 1) c = 1;
  return lambda * acos(c);
}

std::string to_string(BandRegime r) {
  switch (r) {
    case BandRegime::Cap:
      return "cap";
    case BandRegime::Middle:
      return "middle";
    case BandRegime::Sectors:
      return "sectors";
  }
  return "unknown";
}

double azimuth(const std::array<HighFloat, 3>& axis, std::span<const std::int64_t> x) {
  const auto w1 = frame_vector(axis, 1);
  const auto w2 = frame_vector(axis, 2);
  double a = std::atan2(static_cast<double>(hdot(w2, x)), static_cast<double>(hdot(w1, x)));
  if (a < 0) a += 2 * std::acos(-1.0);
  return a;
}

namespace {

std::size_t sector_of(double phi, double phase, double theta, std::size_t count) {
  const double two_pi = 2 * std::acos(-1.0);
  double p = std::fmod(phi - phase, two_pi);
  if (p < 0) p += two_pi;
  auto idx = static_cast<std::size_t>(p / theta);
  return std::min(idx, count - 1);
}

std::optional<std::size_t> circle_through_some(const std::vector<LatticePoint>& pts) {
  if (pts.size() < 3) return std::nullopt;
  for (std::size_t k = 2; k < pts.size(); ++k) {
    if (affine_rank({pts[0], pts[1], pts[k]}) == 2) return embedded_circle_count(pts[0], pts[1], pts[k]).count;
  }
  return std::nullopt;
}

}  // namespace

A13Census census_A13(const Shell& shell, const Band3D& band, const A13Config& config) {
  band.validate();
  if (!shell.empty() && (shell.dim() != 3 || shell.m() != band.profile.m)) {
    throw InvalidArgument("band and shell disagree on dimension or radius");
  }
  A13Census c;
  c.lambda = static_cast<double>(band.profile.lambda());
  c.R = static_cast<double>(band.profile.radius());
  for (std::size_t i = 0; i < shell.size(); ++i) {
    if (band.contains(shell.point(i))) c.members.push_back(shell.point_vec(i));
  }
  c.count = c.members.size();
  const double two_pi = 2 * std::acos(-1.0);
  if (c.R * c.R <= 4 * c.lambda) {
    c.regime = BandRegime::Cap;
  } else if (c.R >= std::pow(c.lambda, 0.75)) {
    c.regime = BandRegime::Sectors;
  } else {
    c.regime = BandRegime::Middle;
  }
  if (c.regime == BandRegime::Middle) {
    const double r = std::pow(c.lambda, 0.25);
    const double width = static_cast<double>(band_radius_and_width(band.profile.m, band.profile.depth()).spherical_width);
    c.covering_caps = static_cast<std::size_t>(
        std::ceil(config.cap_overlap * std::ceil(two_pi * c.R / r) * std::max(1.0, std::ceil(width / r))));
  }
  if (c.regime != BandRegime::Sectors || c.members.empty()) return c;

  const double theta0 = config.theta_coefficient * std::pow(c.R, -2.0 / 3.0);
  if (!(theta0 > 0)) throw InvalidArgument("theta coefficient must be positive");
  c.sector_count = static_cast<std::size_t>(std::ceil(two_pi / theta0));
  c.theta = two_pi / static_cast<double>(c.sector_count);
  const auto axis = band.unit_axis();
  std::map<std::size_t, std::vector<LatticePoint>> groups;
  for (const auto& p : c.members) groups[sector_of(azimuth(axis, p), config.phase, c.theta, c.sector_count)].push_back(p);
  for (auto& [idx, pts] : groups) {
    SectorCensus s;
    s.index = idx;
    s.count = pts.size();
    s.points = std::move(pts);
    c.sectors.push_back(std::move(s));
  }
  parallel_blocks(c.sectors.size(), [&](std::size_t b) {
    SectorCensus& s = c.sectors[b];
    s.hull_volume = hull_volume(s.points);
    s.coplanar = coplanar(s.points);
    if (s.hull_volume < ExactRational(1, 6) && !s.coplanar) {
      throw ComputationError("non-coplanar lattice sector with hull volume below 1/6");
    }
    if (config.circle_bounds && s.coplanar) {
      s.circle_bound = circle_through_some(s.points);
      if (s.circle_bound && s.count > *s.circle_bound) {
        throw ComputationError("coplanar sector exceeds its embedded circle count");
      }
    }
  });
  return c;
}

A23Census census_A23(const Shell& shell, const Band3D& b1, const Band3D& b2, std::size_t samples) {
  b1.validate();
  b2.validate();
  if (b1.profile.m != b2.profile.m) throw InvalidArgument("bands lie on different spheres");
  if (!shell.empty() && (shell.dim() != 3 || shell.m() != b1.profile.m)) {
    throw InvalidArgument("band and shell disagree on dimension or radius");
  }
  const __int128 n1 = norm_sq128(b1.axis);
  const __int128 n2 = norm_sq128(b2.axis);
  const __int128 d12 = dot128(b1.axis, b2.axis);
  // |v1 ∧ v2|² >= ν²|v1|²|v2|² with ν² = 1/4.
  if (4 * (n1 * n2 - d12 * d12) < n1 * n2) throw InvalidArgument("not transverse");

  A23Census c;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto x = shell.point(i);
    if (b1.contains(x) && b2.contains(x)) c.members.push_back(shell.point_vec(i));
  }
  c.count = c.members.size();
  const auto u1 = b1.unit_axis();
  const auto u2 = b2.unit_axis();
  const HighFloat cosang = u1[0] * u2[0] + u1[1] * u2[1] + u1[2] * u2[2];
  const double lambda = static_cast<double>(b1.profile.lambda());
  c.alpha = static_cast<double>(acos(cosang));
  c.pole_distance = lambda * c.alpha;
  c.theta = std::pow(lambda, -2.0 / 3.0);
  const double two_pi = 2 * std::acos(-1.0);
  const auto sectors = static_cast<std::size_t>(std::ceil(two_pi / c.theta));
  const double theta = two_pi / static_cast<double>(sectors);

  const bool first_wider = b1.profile.radius() >= b2.profile.radius();
  const Band3D& wide = first_wider ? b1 : b2;
  const Band3D& other = first_wider ? b2 : b1;
  const auto wa = wide.unit_axis();
  std::set<std::size_t> occupied;
  for (const auto& p : c.members) occupied.insert(sector_of(azimuth(wa, p), 0.0, theta, sectors));
  c.occupied_sectors = occupied.size();

  // Sample the continuous intersection on a height × azimuth grid of the wide band.
  std::set<std::size_t> covering = occupied;
  const auto w1 = frame_vector(wa, 1);
  const auto w2 = frame_vector(wa, 2);
  const auto oa = other.unit_axis();
  const double lo = static_cast<double>(wide.profile.lower());
  const double olo = static_cast<double>(other.profile.lower());
  const std::size_t heights = 16;
  const std::size_t turns = std::max<std::size_t>(1, samples / heights);
  double a[3], e1[3], e2[3], b[3];
  for (int i = 0; i < 3; ++i) {
    a[i] = static_cast<double>(wa[static_cast<std::size_t>(i)]);
    e1[i] = static_cast<double>(w1[static_cast<std::size_t>(i)]);
    e2[i] = static_cast<double>(w2[static_cast<std::size_t>(i)]);
    b[i] = static_cast<double>(oa[static_cast<std::size_t>(i)]);
  }
  for (std::size_t hi = 0; hi < heights; ++hi) {
    const double h = lo + (static_cast<double>(hi) + 0.5) / static_cast<double>(heights);
    const double rr = std::sqrt(std::max(0.0, lambda * lambda - h * h));
    for (std::size_t k = 0; k < turns; ++k) {
      const double phi = two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(turns);
      const double cp = std::cos(phi);
      const double sp = std::sin(phi);
      double proj = 0;
      for (int i = 0; i < 3; ++i) proj += b[i] * (h * a[i] + rr * (cp * e1[i] + sp * e2[i]));
      if (proj >= olo && proj <= olo + 1) covering.insert(sector_of(phi, 0.0, theta, sectors));
    }
  }
  c.covering_sectors = covering.size();
  return c;
}

}  // namespace toral
