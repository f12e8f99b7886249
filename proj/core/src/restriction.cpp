#include "toral/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "toral/error.hpp"
#include "toral/linalg.hpp"
#include "toral/parallel.hpp"
#include "toral/quadrature.hpp"

namespace toral {
namespace {

// Compensated (Neumaier) accumulator.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// u·n for every support point as an integer numerator over a shared denominator.
struct Projection {
  std::vector<std::int64_t> num;
  double den = 1.0;
};

Projection project(const RationalPoint& u, const std::vector<LatticePoint>& pts) {
  BigInt l = 1;
  for (const auto& c : u) l = lcm(l, c.get_den());
  std::vector<BigInt> ints;
  for (const auto& c : u) ints.push_back(c.get_num() * (l / c.get_den()));
  Projection p;
  p.den = l.get_d();
  for (const auto& n : pts) {
    BigInt s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s += ints[i] * to_big(n[i]);
    if (!s.fits_slong_p()) throw ComputationError("phase numerator overflow");
    p.num.push_back(s.get_si());
  }
  return p;
}

ExactRational exact_max_phase(const std::vector<LatticePoint>& members, const std::vector<RationalPoint>& frame) {
  ExactRational best = 0;
  for (const auto& u : frame) {
    std::vector<ExactRational> proj;
    for (const auto& n : members) proj.push_back(dot(u, to_rational_point(n)));
    if (proj.empty()) continue;
    const auto [lo, hi] = std::minmax_element(proj.begin(), proj.end());
    const ExactRational spread = *hi - *lo;
    if (spread > best) best = spread;
  }
  return best;
}

ExtremalConstruction finish(const Shell& shell, std::vector<LatticePoint> members, std::vector<RationalPoint> frame) {
  GeodesicSubmanifold s{std::move(frame), RationalPoint(static_cast<std::size_t>(shell.dim()), ExactRational(0))};
  s.validate();
  const ExactRational phase = exact_max_phase(members, s.frame);
  if (phase > 1) throw InvalidArgument("member pair violates the phase condition |(m-n)·u| <= 1");
  const std::size_t count = members.size();
  ExtremalConstruction c{Eigenfunction::uniform(shell, std::move(members)), std::move(s), count, 0, 0, 0, phase};
  c.norm_sq = restriction_norm_sq(c.eigenfunction, c.submanifold);
  c.baseline = c.submanifold.wedge_norm() * std::ldexp(1.0, c.submanifold.k());
  c.ratio = c.norm_sq / c.baseline;
  return c;
}

void check_members(const Shell& shell, const std::vector<LatticePoint>& members) {
  if (members.empty()) throw InvalidArgument("empty member set");
  for (const auto& p : members) {
    if (static_cast<int>(p.size()) != shell.dim() || !shell.contains(p)) {
      throw InvalidArgument("member is not a shell point");
    }
  }
}

}  // namespace

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

Eigenfunction::Eigenfunction(Shell shell, std::vector<LatticePoint> support, std::vector<Complex> coeffs)
    : shell_(std::move(shell)) {
  if (support.size() != coeffs.size()) throw InvalidArgument("support and coefficient counts differ");
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  double norm = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& p = support[order[i]];
    if (static_cast<int>(p.size()) != shell_.dim() || !shell_.contains(p)) {
      throw InvalidArgument("eigenfunction support must lie on the shell");
    }
    if (i > 0 && p == support_.back()) throw InvalidArgument("duplicate support point");
    const Complex c = coeffs[order[i]];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("non-finite coefficient");
    support_.push_back(p);
    coeffs_.push_back(c);
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > 1e-12) throw InvalidArgument("eigenfunction is not normalized");
}

Eigenfunction Eigenfunction::normalized(Shell shell, std::vector<LatticePoint> support, std::vector<Complex> coeffs) {
  double norm = 0.0;
  for (const auto& c : coeffs) norm += std::norm(c);
  if (!(norm > 0)) throw InvalidArgument("zero coefficient vector cannot be normalized");
  const double s = 1.0 / std::sqrt(norm);
  for (auto& c : coeffs) c *= s;
  return Eigenfunction(std::move(shell), std::move(support), std::move(coeffs));
}

Eigenfunction Eigenfunction::uniform(Shell shell, std::vector<LatticePoint> support) {
  std::vector<Complex> c(support.size(), Complex(1.0, 0.0));
  return normalized(std::move(shell), std::move(support), std::move(c));
}

Eigenfunction Eigenfunction::random(Shell shell, Rng& rng) {
  auto pts = shell.points();
  std::vector<Complex> c;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    c.emplace_back(re, im);
  }
  return normalized(std::move(shell), std::move(pts), std::move(c));
}

Complex Eigenfunction::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != shell_.dim()) throw InvalidArgument("dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    double ph = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) ph += static_cast<double>(support_[i][j]) * x[j];
    s += coeffs_[i] * std::polar(1.0, ph);
  }
  return s;
}

void GeodesicSubmanifold::validate() const {
  const int d = dim();
  const int kk = k();
  if (kk < 1 || d < 2 || kk > d - 1) throw InvalidArgument("submanifold needs 1 <= k <= d - 1");
  for (const auto& u : frame) {
    if (static_cast<int>(u.size()) != d) throw InvalidArgument("frame dimension mismatch");
  }
  if (!base.empty() && static_cast<int>(base.size()) != d) throw InvalidArgument("base point dimension mismatch");
  std::vector<bool> pivot(static_cast<std::size_t>(d), false);
  for (int j = 0; j < kk; ++j) {
    int found = -1;
    for (int c = 0; c < d && found < 0; ++c) {
      if (frame[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] != 1) continue;
      bool ok = true;
      for (int l = 0; l < kk && ok; ++l) {
        if (l != j && frame[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)] != 0) ok = false;
      }
      if (ok) found = c;
    }
    if (found < 0) throw InvalidArgument("frame is not in normalized form");
    pivot[static_cast<std::size_t>(found)] = true;
  }
  for (const auto& u : frame) {
    for (int c = 0; c < d; ++c) {
      if (!pivot[static_cast<std::size_t>(c)] && abs(u[static_cast<std::size_t>(c)]) > 1) {
        throw InvalidArgument("frame coefficient exceeds 1 in magnitude");
      }
    }
  }
  const ExactRational w = wedge_norm_sq(frame);
  BigInt cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), static_cast<unsigned long>(d - kk + 1), static_cast<unsigned long>(kk));
  if (w < 1 || w > ExactRational(cap)) throw InvalidArgument("frame wedge norm out of range");
  for (const auto& u : frame) {
    if (dot(u, u) > d - kk + 1) throw InvalidArgument("frame vector too long");
  }
}

double GeodesicSubmanifold::wedge_norm() const { return std::sqrt(wedge_norm_sq(frame).get_d()); }

GeodesicSubmanifold GeodesicSubmanifold::line(const ExactRational& slope) {
  if (abs(slope) > 1) throw InvalidArgument("line slope must satisfy |a| <= 1 (exchange coordinates otherwise)");
  GeodesicSubmanifold s{{{ExactRational(1), slope}}, {ExactRational(0), ExactRational(0)}};
  s.validate();
  return s;
}

GeodesicSubmanifold GeodesicSubmanifold::random(int d, int k, Rng& rng) {
  if (k < 1 || k > d - 1) throw InvalidArgument("submanifold needs 1 <= k <= d - 1");
  std::vector<int> cols(static_cast<std::size_t>(d));
  std::iota(cols.begin(), cols.end(), 0);
  for (int i = d - 1; i > 0; --i) std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  GeodesicSubmanifold s;
  s.frame.assign(static_cast<std::size_t>(k), RationalPoint(static_cast<std::size_t>(d), ExactRational(0)));
  for (int j = 0; j < k; ++j) {
    auto& u = s.frame[static_cast<std::size_t>(j)];
    u[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])] = 1;
    for (int i = k; i < d; ++i) {
      ExactRational a(to_big(rng.uniform_int(-8, 8)), BigInt(8));
      a.canonicalize();
      u[static_cast<std::size_t>(cols[static_cast<std::size_t>(i)])] = a;
    }
  }
  for (int i = 0; i < d; ++i) {
    ExactRational b(to_big(rng.uniform_int(-32, 32)), BigInt(8));
    b.canonicalize();
    s.base.push_back(b);
  }
  s.validate();
  return s;
}

double restriction_norm_sq(const Eigenfunction& e, const GeodesicSubmanifold& s) {
  s.validate();
  if (s.dim() != e.shell().dim()) throw InvalidArgument("submanifold and eigenfunction dimensions differ");
  const auto& pts = e.support();
  const auto& c = e.coeffs();
  const std::size_t n = pts.size();
  std::vector<Projection> proj;
  for (const auto& u : s.frame) proj.push_back(project(u, pts));
  const RationalPoint base = s.base.empty() ? RationalPoint(static_cast<std::size_t>(s.dim()), ExactRational(0)) : s.base;
  const Projection phase0 = project(base, pts);

  constexpr std::size_t kRows = 32;
  const std::size_t blocks = (n + kRows - 1) / kRows;
  std::vector<std::pair<double, double>> partial(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    Neumaier re;
    Neumaier im;
    const std::size_t r1 = std::min(n, (b + 1) * kRows);
    for (std::size_t a = b * kRows; a < r1; ++a) {
      for (std::size_t bb = 0; bb < n; ++bb) {
        double kernel = 1.0;
        for (const auto& p : proj) {
          const std::int64_t dnum = p.num[a] - p.num[bb];
          kernel *= dnum == 0 ? 2.0 : 2.0 * sinc(static_cast<double>(dnum) / p.den);
        }
        const std::int64_t dph = phase0.num[a] - phase0.num[bb];
        const Complex rot = dph == 0 ? Complex(1.0, 0.0) : std::polar(1.0, static_cast<double>(dph) / phase0.den);
        const Complex term = c[a] * std::conj(c[bb]) * rot * kernel;
        re.add(term.real());
        im.add(term.imag());
      }
    }
    partial[b] = {re.value(), im.value()};
  });
  Neumaier re;
  Neumaier im;
  for (const auto& [r, i] : partial) {
    re.add(r);
    im.add(i);
  }
  const double w = s.wedge_norm();
  const double value = w * re.value();
  const double imag = w * im.value();
  const double scale = std::max(1.0, std::abs(value));
  if (std::abs(imag) > 1e-10 * scale || value < -1e-10 * scale) {
    throw ComputationError("restriction kernel sum is not real and nonnegative");
  }
  return std::max(0.0, value);
}

double quadrature_restriction_norm(const Eigenfunction& e, const GeodesicSubmanifold& s, std::size_t resolution) {
  s.validate();
  if (s.dim() != e.shell().dim()) throw InvalidArgument("submanifold and eigenfunction dimensions differ");
  const auto rule = gauss_legendre(resolution);
  const auto& pts = e.support();
  const auto& c = e.coeffs();
  const int k = s.k();
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> pu(static_cast<std::size_t>(k), std::vector<double>(n));
  std::vector<double> p0(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) pu[static_cast<std::size_t>(j)][i] = dot(s.frame[static_cast<std::size_t>(j)], to_rational_point(pts[i])).get_d();
    if (!s.base.empty()) p0[i] = dot(s.base, to_rational_point(pts[i])).get_d();
  }
  // Total nodes resolution^k, indexed with the first axis slowest.
  std::size_t inner = 1;
  for (int j = 1; j < k; ++j) inner *= resolution;
  std::vector<double> partial(resolution);
  parallel_blocks(resolution, [&](std::size_t i0) {
    Neumaier acc;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    idx[0] = i0;
    for (std::size_t r = 0; r < inner; ++r) {
      std::size_t rem = r;
      double weight = rule.weights[i0];
      for (int j = k - 1; j >= 1; --j) {
        idx[static_cast<std::size_t>(j)] = rem % resolution;
        rem /= resolution;
        weight *= rule.weights[idx[static_cast<std::size_t>(j)]];
      }
      Complex v = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        double ph = p0[m];
        for (int j = 0; j < k; ++j) ph += rule.nodes[idx[static_cast<std::size_t>(j)]] * pu[static_cast<std::size_t>(j)][m];
        v += c[m] * std::polar(1.0, ph);
      }
      acc.add(weight * std::norm(v));
    }
    partial[i0] = acc.value();
  });
  Neumaier total;
  for (double p : partial) total.add(p);
  return s.wedge_norm() * total.value();
}

bool ExtremalConstruction::bracket_holds() const {
  const double lo = std::pow(sinc(1.0), submanifold.k()) * static_cast<double>(count);
  const double hi = static_cast<double>(count);
  return ratio >= lo * (1 - 1e-12) && ratio <= hi * (1 + 1e-12);
}

ExtremalConstruction build_extremal_cap_2d(const Shell& shell, const std::vector<LatticePoint>& members) {
  if (shell.dim() != 2) throw InvalidArgument("build_extremal_cap_2d needs d = 2");
  check_members(shell, members);
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  for (const auto& p : members) {
    s1 += p[0];
    s2 += p[1];
  }
  RationalPoint u{ExactRational(1), ExactRational(0)};
  if (s1 != 0 || s2 != 0) {
    const bool wide = std::llabs(s1) >= std::llabs(s2);
    ExactRational a(to_big(wide ? s2 : s1), to_big(wide ? s1 : s2));
    a.canonicalize();
    u = wide ? RationalPoint{1, a} : RationalPoint{a, 1};
  }
  return finish(shell, members, {u});
}

ExtremalConstruction build_extremal_band_intersection(const Shell& shell, const std::vector<LatticePoint>& directions,
                                                      const std::vector<LatticePoint>& members) {
  check_members(shell, members);
  const int d = shell.dim();
  const int k = static_cast<int>(directions.size());
  if (k < 1 || k > d - 1) throw InvalidArgument("band count k must satisfy 1 <= k <= d - 1");
  RationalMatrix u;
  for (const auto& v : directions) {
    if (static_cast<int>(v.size()) != d) throw InvalidArgument("direction dimension mismatch");
    u.push_back(to_rational_point(v));
  }
  // Columns J with the largest |det U_J| (first in lexicographic order).
  std::vector<int> pick;
  std::vector<int> best;
  ExactRational best_det = 0;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      RationalMatrix sub(static_cast<std::size_t>(k), std::vector<ExactRational>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
      }
      const ExactRational det = abs(determinant(sub));
      if (det > best_det) {
        best_det = det;
        best = pick;
      }
      return;
    }
    for (int c = start; c < d; ++c) {
      pick.push_back(c);
      self(self, c + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  if (best_det == 0) throw InvalidArgument("band directions are linearly dependent");
  RationalMatrix uj(static_cast<std::size_t>(k), std::vector<ExactRational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) uj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(best[static_cast<std::size_t>(j)])];
  }
  // New frame U_J^{-1}·U: identity on the columns J, entries bounded by 1 elsewhere (Cramer).
  std::vector<RationalPoint> frame(static_cast<std::size_t>(k), RationalPoint(static_cast<std::size_t>(d)));
  for (int c = 0; c < d; ++c) {
    std::vector<ExactRational> col(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) col[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    auto y = solve(uj, col);
    for (int i = 0; i < k; ++i) frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = (*y)[static_cast<std::size_t>(i)];
  }
  return finish(shell, members, std::move(frame));
}

ExtremalConstruction build_extremal_subsphere_cap(const Shell& shell, int k) {
  const int d = shell.dim();
  if (k < 1 || k > d - 1) throw InvalidArgument("k must satisfy 1 <= k <= d - 1");
  const int dsub = d - k + 1;
  std::vector<LatticePoint> sub;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto p = shell.point(i);
    if (std::all_of(p.begin() + dsub, p.end(), [](auto c) { return c == 0; })) sub.emplace_back(p.begin(), p.begin() + dsub);
  }
  if (sub.empty()) throw InvalidArgument("coordinate sub-shell is empty");
  const Shell subshell(dsub, shell.m(), sub);
  const auto cap = max_cap_count(subshell, default_cap_radius_sq(shell.m()));
  std::vector<LatticePoint> members;
  std::vector<std::int64_t> sum(static_cast<std::size_t>(dsub), 0);
  for (auto p : cap.members) {
    for (int i = 0; i < dsub; ++i) sum[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i)];
    p.resize(static_cast<std::size_t>(d), 0);
    members.push_back(std::move(p));
  }
  int pivot = 0;
  for (int i = 1; i < dsub; ++i) {
    if (std::llabs(sum[static_cast<std::size_t>(i)]) > std::llabs(sum[static_cast<std::size_t>(pivot)])) pivot = i;
  }
  std::vector<RationalPoint> frame;
  RationalPoint u1(static_cast<std::size_t>(d), ExactRational(0));
  if (sum[static_cast<std::size_t>(pivot)] == 0) {
    u1[0] = 1;
  } else {
    for (int i = 0; i < dsub; ++i) {
      u1[static_cast<std::size_t>(i)] = ExactRational(to_big(sum[static_cast<std::size_t>(i)]), to_big(sum[static_cast<std::size_t>(pivot)]));
      u1[static_cast<std::size_t>(i)].canonicalize();
    }
  }
  frame.push_back(std::move(u1));
  for (int j = dsub; j < d; ++j) {
    RationalPoint e(static_cast<std::size_t>(d), ExactRational(0));
    e[static_cast<std::size_t>(j)] = 1;
    frame.push_back(std::move(e));
  }
  return finish(shell, std::move(members), std::move(frame));
}

HemisphereSplit hemisphere_split(const Shell& shell, const std::vector<ExactRational>& slopes) {
  const int d = shell.dim();
  if (static_cast<int>(slopes.size()) != d - 1) throw InvalidArgument("hemisphere_split needs d - 1 slopes");
  for (const auto& a : slopes) {
    if (abs(a) > 1) throw InvalidArgument("slopes must satisfy |a_j| <= 1");
  }
  HemisphereSplit out;
  std::map<std::vector<BigInt>, std::size_t> plus_fibers;
  std::map<std::vector<BigInt>, std::size_t> minus_fibers;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto x = shell.point(i);
    ExactRational side = -to_rational(x[static_cast<std::size_t>(d - 1)]);
    std::vector<BigInt> key;
    for (int j = 0; j < d - 1; ++j) {
      const auto& a = slopes[static_cast<std::size_t>(j)];
      side += a * to_rational(x[static_cast<std::size_t>(j)]);
      // q_j x_j + p_j x_d identifies the fiber x_j + a_j x_d = t_j.
      key.push_back(a.get_den() * to_big(x[static_cast<std::size_t>(j)]) + a.get_num() * to_big(x[static_cast<std::size_t>(d - 1)]));
    }
    if (side >= 0) {
      out.plus.push_back(shell.point_vec(i));
      ++plus_fibers[key];
    } else {
      out.minus.push_back(shell.point_vec(i));
      ++minus_fibers[key];
    }
  }
  for (const auto& [key, cnt] : plus_fibers) out.plus_violations += cnt - 1;
  for (const auto& [key, cnt] : minus_fibers) out.minus_violations += cnt - 1;
  return out;
}

SlopeBoundReport rational_slope_norm_bound(const Shell& shell, const ExactRational& slope, std::size_t samples,
                                           std::uint64_t seed) {
  if (shell.dim() != 2) throw InvalidArgument("rational_slope_norm_bound needs d = 2");
  if (shell.empty()) throw InvalidArgument("empty shell");
  const auto line = GeodesicSubmanifold::line(slope);
  SlopeBoundReport r;
  r.slope = slope;
  r.q = slope.get_den().get_si();
  const double a = slope.get_d();
  r.derived_bound = 4 * std::acos(-1.0) * std::sqrt(1 + a * a);
  auto offer = [&](const Eigenfunction& e) {
    r.max_norm_sq = std::max(r.max_norm_sq, restriction_norm_sq(e, line));
    ++r.samples;
  };
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) offer(Eigenfunction::random(shell, rng));
  for (std::size_t i = 0; i < shell.size(); ++i) offer(Eigenfunction::uniform(shell, {shell.point_vec(i)}));
  const auto cap = max_cap_count(shell, default_cap_radius_sq(shell.m()));
  offer(Eigenfunction::uniform(shell, cap.members));
  // Caps centered on the line's direction, where chords are nearly orthogonal to it.
  for (int sign : {1, -1}) {
    const CapWitness w{{0, 0}, {1, slope}, ExactRational(shell.m()) / (1 + slope * slope), sign,
                       default_cap_radius_sq(shell.m())};
    std::vector<LatticePoint> members;
    for (std::size_t i = 0; i < shell.size(); ++i) {
      if (w.contains(shell.point(i), shell.m())) members.push_back(shell.point_vec(i));
    }
    if (!members.empty()) offer(Eigenfunction::uniform(shell, members));
  }
  r.max_over_q = r.max_norm_sq / static_cast<double>(r.q);
  return r;
}

}  // namespace toral
