#include "toral/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "toral/error.hpp"
#include "toral/linalg.hpp"

namespace toral {
namespace {

void require_dim(std::size_t got, int want) {
  if (static_cast<int>(got) != want) throw InvalidArgument("dimension mismatch");
}

ExactRational norm_sq(const RationalPoint& v) { return dot(v, v); }

ExactRational dot_lattice(const RationalPoint& v, std::span<const std::int64_t> x) {
  ExactRational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * to_big(x[i]);
  return s;
}

std::vector<LatticePoint> gather(const Shell& shell, const std::vector<std::size_t>& idx) {
  std::vector<LatticePoint> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(shell.point_vec(i));
  return out;
}

// Fixed generic functional for the extremal-cap candidate construction.
RationalPoint generic_functional(int d) {
  static constexpr std::int64_t kEntries[] = {1000003, -999331, 1000117, -998551,
                                              1000609, -997879, 1001003, -996323};
  RationalPoint g;
  for (int i = 0; i < d; ++i) {
    const std::int64_t base = kEntries[i % 8];
    g.push_back(to_rational(base + 7919 * (i / 8)));
  }
  return g;
}

// A candidate cap center c = c0 + sign·√s·v with |c|² = m.
struct CenterCandidate {
  RationalPoint c0;
  RationalPoint v;
  ExactRational s;
  int sign = 1;
};

class CapEvaluator {
 public:
  CapEvaluator(const Shell& shell, const ExactRational& h) : shell_(shell), h_(h), hd_(h.get_d()) {}

  // Members of the cap among `pool` (ascending shell indices).
  std::vector<std::size_t> members(const CenterCandidate& c, const std::vector<std::size_t>& pool) const {
    const std::size_t d = static_cast<std::size_t>(shell_.dim());
    std::vector<double> c0d(d);
    std::vector<double> vd(d);
    for (std::size_t i = 0; i < d; ++i) {
      c0d[i] = c.c0[i].get_d();
      vd[i] = c.v[i].get_d();
    }
    const double sd = std::sqrt(c.s.get_d());
    std::vector<std::size_t> out;
    for (auto idx : pool) {
      auto x = shell_.point(idx);
      double a = -hd_;
      double b = 0.0;
      double scale = std::abs(hd_);
      for (std::size_t i = 0; i < d; ++i) {
        const double xi = static_cast<double>(x[i]);
        a += xi * c0d[i];
        b += xi * vd[i];
        scale += std::abs(xi * c0d[i]) + std::abs(xi * vd[i]) * sd;
      }
      const double approx = a + c.sign * b * sd;
      bool inside;
      if (std::abs(approx) > 1e-9 * scale + 1e-300) {
        inside = approx > 0;
      } else {
        const ExactRational ea = dot_lattice(c.c0, x) - h_;
        const ExactRational eb = c.sign * dot_lattice(c.v, x);
        inside = sign_a_plus_b_sqrt(ea, eb, c.s) >= 0;
      }
      if (inside) out.push_back(idx);
    }
    return out;
  }

 private:
  const Shell& shell_;
  ExactRational h_;
  double hd_;
};

bool better(const std::vector<std::size_t>& cand, const std::vector<std::size_t>& best, bool have_best) {
  if (!have_best) return true;
  if (cand.size() != best.size()) return cand.size() > best.size();
  return cand < best;
}

}  // namespace

bool Cap::contains(std::span<const std::int64_t> x) const {
  require_dim(x.size(), static_cast<int>(center.size()));
  ExactRational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const ExactRational diff = to_rational(x[i]) - center[i];
    s += diff * diff;
  }
  return s <= radius_sq;
}

void UnitBand::validate() const {
  if (direction.empty() || std::all_of(direction.begin(), direction.end(), [](const auto& v) { return v == 0; })) {
    throw InvalidArgument("band direction must be nonzero");
  }
  if (anchor.size() != direction.size()) throw InvalidArgument("band anchor dimension mismatch");
  if (half_width <= 0) throw InvalidArgument("band half width must be positive");
}

namespace {

// Integer form of a band test: (u·x - u·x0)² <= w²|u|² becomes (U·x - p)²·B <= A
// after clearing denominators once.
struct PreparedBand {
  std::vector<BigInt> coeffs;
  BigInt p, a, b;

  explicit PreparedBand(const UnitBand& band) {
    BigInt l = 1;
    for (const auto& c : band.direction) l = lcm(l, BigInt(c.get_den()));
    ExactRational shift = 0;
    for (std::size_t i = 0; i < band.direction.size(); ++i) shift += band.direction[i] * l * band.anchor[i];
    const BigInt q = shift.get_den();
    for (const auto& c : band.direction) coeffs.push_back(BigInt(c * l) * q);
    p = shift.get_num();
    const ExactRational w = ExactRational(l * l * q * q) * band.half_width * band.half_width * norm_sq(band.direction);
    a = w.get_num();
    b = w.get_den();
  }

  bool contains(std::span<const std::int64_t> x) const {
    BigInt n = -p;
    for (std::size_t i = 0; i < x.size(); ++i) n += coeffs[i] * to_big(x[i]);
    return n * n * b <= a;
  }
};

}  // namespace

bool UnitBand::contains(std::span<const std::int64_t> x) const {
  require_dim(x.size(), static_cast<int>(direction.size()));
  return PreparedBand(*this).contains(x);
}

ExactRational transversality_nu_sq(int k, int d) {
  if (k < 1 || k > d - 1) throw InvalidArgument("band count k must satisfy 1 <= k <= d - 1");
  BigInt base = d - k + 1;
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
  return ExactRational(BigInt(1), p);
}

BandFamily::BandFamily(std::vector<UnitBand> bands, int d) : bands_(std::move(bands)), d_(d) {
  const int k = static_cast<int>(bands_.size());
  nu_sq_ = transversality_nu_sq(k, d);
  std::vector<RationalPoint> frame;
  for (const auto& b : bands_) {
    b.validate();
    require_dim(b.direction.size(), d);
    frame.push_back(b.direction);
  }
  if (!is_transverse(frame, nu_sq_)) throw InvalidArgument("band family is not transverse");
}

bool BandFamily::contains(std::span<const std::int64_t> x) const {
  return std::all_of(bands_.begin(), bands_.end(), [&](const UnitBand& b) { return b.contains(x); });
}

CountResult cap_count(const Shell& shell, const Cap& cap) {
  require_dim(cap.center.size(), shell.dim());
  if (cap.radius_sq <= 0) throw InvalidArgument("cap radius_sq must be positive");
  CountResult r;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    if (cap.contains(shell.point(i))) r.members.push_back(shell.point_vec(i));
  }
  r.count = r.members.size();
  return r;
}

CountResult band_count(const Shell& shell, const UnitBand& band) {
  band.validate();
  require_dim(band.direction.size(), shell.dim());
  const PreparedBand prepared(band);
  CountResult r;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    if (prepared.contains(shell.point(i))) r.members.push_back(shell.point_vec(i));
  }
  r.count = r.members.size();
  return r;
}

CountResult family_count(const Shell& shell, const BandFamily& family) {
  require_dim(static_cast<std::size_t>(family.dim()), shell.dim());
  std::vector<PreparedBand> bands;
  for (const auto& b : family.bands()) bands.emplace_back(b);
  CountResult r;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto x = shell.point(i);
    if (std::all_of(bands.begin(), bands.end(), [&](const PreparedBand& b) { return b.contains(x); })) {
      r.members.push_back(shell.point_vec(i));
    }
  }
  r.count = r.members.size();
  return r;
}

ExactRational wedge_norm_sq(const std::vector<RationalPoint>& frame) {
  if (frame.empty()) throw InvalidArgument("empty frame");
  for (const auto& u : frame) require_dim(u.size(), static_cast<int>(frame[0].size()));
  if (frame.size() > frame[0].size()) return 0;
  return determinant(gram(frame));
}

bool is_transverse(const std::vector<RationalPoint>& frame, const ExactRational& nu_sq) {
  ExactRational prod = 1;
  for (const auto& u : frame) prod *= norm_sq(u);
  if (prod == 0) return false;
  return wedge_norm_sq(frame) >= nu_sq * prod;
}

ExactRational default_cap_radius_sq(std::int64_t m) {
  return to_rational(std::max<std::int64_t>(1, isqrt(m)));
}

std::vector<double> CapWitness::center_approx() const {
  std::vector<double> c(base.size());
  const double t = sign * std::sqrt(t_sq.get_d());
  for (std::size_t i = 0; i < base.size(); ++i) c[i] = base[i].get_d() + t * offset[i].get_d();
  return c;
}

bool CapWitness::contains(std::span<const std::int64_t> x, std::int64_t m) const {
  // |x - c|² = |x|² + |c|² - 2 x·c = 2m - 2 x·c on the sphere.
  const ExactRational h = to_rational(m) - radius_sq / 2;
  return sign_a_plus_b_sqrt(dot_lattice(base, x) - h, sign * dot_lattice(offset, x), t_sq) >= 0;
}

MaxCapResult max_cap_count(const Shell& shell, const ExactRational& radius_sq) {
  if (radius_sq <= 0) throw InvalidArgument("cap radius_sq must be positive");
  MaxCapResult result;
  if (shell.empty()) return result;

  const int d = shell.dim();
  const std::size_t n = shell.size();
  const std::int64_t m = shell.m();
  const ExactRational h = to_rational(m) - radius_sq / 2;
  const RationalPoint zero(static_cast<std::size_t>(d), ExactRational(0));

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);

  // Two members of one cap are at most one diameter apart.
  const ExactRational diam_sq = 4 * radius_sq;
  auto close = [&](std::size_t i, std::size_t j) {
    __int128 s = 0;
    auto p = shell.point(i);
    auto q = shell.point(j);
    for (int t = 0; t < d; ++t) {
      const __int128 diff = static_cast<__int128>(p[t]) - q[t];
      s += diff * diff;
    }
    return ExactRational(from_int128(s)) <= diam_sq;
  };

  CapEvaluator eval(shell, h);
  std::vector<std::size_t> best;
  std::optional<CenterCandidate> best_center;

  auto consider = [&](const CenterCandidate& c, const std::vector<std::size_t>& pool) {
    auto mem = eval.members(c, pool);
    if (better(mem, best, best_center.has_value())) {
      best = std::move(mem);
      best_center = c;
    }
  };

  if (radius_sq >= 4 * to_rational(m)) {
    consider(CenterCandidate{to_rational_point(shell.point(0)), zero, 0, 1}, all);
  } else {
    std::vector<std::vector<std::size_t>> nbr(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (close(i, j)) {
          nbr[i].push_back(j);
          nbr[j].push_back(i);
        }
      }
    }
    const RationalPoint g = generic_functional(d);

    // T = ∅: the g-extremal point of the sphere.
    {
      const ExactRational s = to_rational(m) / norm_sq(g);
      consider(CenterCandidate{zero, g, s, 1}, all);
      consider(CenterCandidate{zero, g, s, -1}, all);
    }

    for (std::size_t p = 0; p < n; ++p) {
      std::vector<std::size_t> pool = nbr[p];
      pool.push_back(p);
      std::sort(pool.begin(), pool.end());

      consider(CenterCandidate{to_rational_point(shell.point(p)), zero, 0, 1}, pool);

      // Grow T = {p, q2, ...} with increasing indices, pairwise close.
      std::vector<std::size_t> subset{p};
      auto visit = [&](auto&& self, std::size_t start) -> void {
        std::vector<RationalPoint> ts;
        for (auto i : subset) ts.push_back(to_rational_point(shell.point(i)));
        const auto G = gram(ts);
        if (determinant(G) != 0) {
          const std::size_t j = ts.size();
          auto lam = solve(G, std::vector<ExactRational>(j, h));
          std::vector<ExactRational> tg(j);
          for (std::size_t i = 0; i < j; ++i) tg[i] = dot(ts[i], g);
          auto mu = solve(G, tg);
          RationalPoint c0 = zero;
          RationalPoint v = g;
          for (std::size_t i = 0; i < j; ++i) {
            for (int t = 0; t < d; ++t) {
              c0[static_cast<std::size_t>(t)] += (*lam)[i] * ts[i][static_cast<std::size_t>(t)];
              v[static_cast<std::size_t>(t)] -= (*mu)[i] * ts[i][static_cast<std::size_t>(t)];
            }
          }
          const ExactRational vv = norm_sq(v);
          if (vv != 0) {
            const ExactRational s = (to_rational(m) - norm_sq(c0)) / vv;
            if (s >= 0) {
              consider(CenterCandidate{c0, v, s, 1}, pool);
              if (s > 0) consider(CenterCandidate{c0, v, s, -1}, pool);
            }
          }
        } else {
          return;  // dependent; supersets stay dependent
        }
        if (static_cast<int>(subset.size()) >= d - 1) return;
        for (auto q : nbr[p]) {
          if (q < start) continue;
          bool ok = true;
          for (std::size_t i = 1; i < subset.size() && ok; ++i) ok = close(subset[i], q);
          if (!ok) continue;
          subset.push_back(q);
          self(self, q + 1);
          subset.pop_back();
        }
      };
      visit(visit, p + 1);
    }
  }

  result.count = best.size();
  result.members = gather(shell, best);
  result.witness = CapWitness{best_center->c0, best_center->v, best_center->s, best_center->sign, radius_sq};
  return result;
}

std::size_t max_cap_count_grid(const Shell& shell, double radius_sq, std::size_t resolution) {
  if (shell.empty()) return 0;
  const int d = shell.dim();
  if (d != 2 && d != 3) throw InvalidArgument("grid oracle supports d = 2 or 3");
  const double lambda = shell.lambda();
  const double tol = radius_sq * (1.0 + 1e-12);
  std::size_t best = 0;
  auto count_at = [&](const double* c) {
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < shell.size(); ++i) {
      auto x = shell.point(i);
      double s = 0;
      for (int t = 0; t < d; ++t) s += (static_cast<double>(x[t]) - c[t]) * (static_cast<double>(x[t]) - c[t]);
      if (s <= tol) ++cnt;
    }
    return cnt;
  };
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < resolution; ++k) {
    double c[3];
    if (d == 2) {
      const double a = 2 * pi * static_cast<double>(k) / static_cast<double>(resolution);
      c[0] = lambda * std::cos(a);
      c[1] = lambda * std::sin(a);
    } else {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(resolution);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = static_cast<double>(k) * pi * (3.0 - std::sqrt(5.0));
      c[0] = lambda * r * std::cos(phi);
      c[1] = lambda * r * std::sin(phi);
      c[2] = lambda * z;
    }
    best = std::max(best, count_at(c));
  }
  return best;
}

namespace {

__int128 small_to_int128(const BigInt& v) {
  const BigInt hi = v >> 64;
  const BigInt lo = v - (hi << 64);
  return (static_cast<__int128>(hi.get_ui()) << 64) | static_cast<__int128>(lo.get_ui());
}

struct AnchorSearch {
  const Shell& shell;
  std::vector<LatticePoint> dirs;
  std::vector<std::vector<std::int64_t>> y;  // y[j][i] = u_j · x_i
  std::vector<__int128> width_sq;            // ⌊(2·half_width)²·|u_j|²⌋
  std::vector<std::size_t> best;
  bool have_best = false;

  bool fits(std::size_t j, std::int64_t lo, std::int64_t hi) const {
    const __int128 diff = static_cast<__int128>(hi) - lo;
    return diff * diff <= width_sq[j];
  }

  void offer(std::vector<std::size_t> cand) {
    std::sort(cand.begin(), cand.end());
    if (better(cand, best, have_best)) {
      best = std::move(cand);
      have_best = true;
    }
  }

  void search(std::size_t j, std::vector<std::size_t> pool) {
    if (pool.empty()) return;
    if (have_best && pool.size() < best.size()) return;
    const auto& yj = y[j];
    std::sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      return yj[a] != yj[b] ? yj[a] < yj[b] : a < b;
    });
    if (j + 1 == dirs.size()) {
      std::size_t hi = 0;
      for (std::size_t lo = 0; lo < pool.size(); ++lo) {
        if (lo > 0 && yj[pool[lo]] == yj[pool[lo - 1]]) continue;
        if (hi < lo) hi = lo;
        while (hi < pool.size() && fits(j, yj[pool[lo]], yj[pool[hi]])) ++hi;
        if (!have_best || hi - lo >= best.size()) {
          offer(std::vector<std::size_t>(pool.begin() + static_cast<std::ptrdiff_t>(lo),
                                         pool.begin() + static_cast<std::ptrdiff_t>(hi)));
        }
      }
      return;
    }
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < pool.size(); ++lo) {
      if (lo > 0 && yj[pool[lo]] == yj[pool[lo - 1]]) continue;
      if (hi < lo) hi = lo;
      while (hi < pool.size() && fits(j, yj[pool[lo]], yj[pool[hi]])) ++hi;
      search(j + 1, std::vector<std::size_t>(pool.begin() + static_cast<std::ptrdiff_t>(lo),
                                             pool.begin() + static_cast<std::ptrdiff_t>(hi)));
    }
  }
};

}  // namespace

BandSearchResult max_over_anchors(const Shell& shell, const std::vector<LatticePoint>& directions,
                                  const ExactRational& half_width) {
  const int d = shell.dim();
  const int k = static_cast<int>(directions.size());
  if (k < 1 || k > d - 1) throw InvalidArgument("band count k must satisfy 1 <= k <= d - 1");
  if (half_width <= 0) throw InvalidArgument("band half width must be positive");
  std::vector<RationalPoint> frame;
  for (const auto& u : directions) {
    require_dim(u.size(), d);
    frame.push_back(to_rational_point(u));
  }
  const ExactRational nu_sq = transversality_nu_sq(k, d);
  if (!is_transverse(frame, nu_sq)) throw InvalidArgument("band family is not transverse");

  BandSearchResult result;
  result.tuples_searched = 1;
  if (shell.empty()) return result;

  AnchorSearch s{shell, directions, {}, {}, {}, false};
  for (const auto& u : directions) {
    std::vector<std::int64_t> yv(shell.size());
    for (std::size_t i = 0; i < shell.size(); ++i) {
      const __int128 v = dot128(u, shell.point(i));
      if (v >= (static_cast<__int128>(1) << 62) || v <= -(static_cast<__int128>(1) << 62)) {
        throw ComputationError("band projection overflow");
      }
      yv[i] = static_cast<std::int64_t>(v);
    }
    s.y.push_back(std::move(yv));
    const ExactRational w = 4 * half_width * half_width * ExactRational(from_int128(norm_sq128(u)));
    const BigInt wf = w.get_num() / w.get_den();
    // Projections are below 2^62 in absolute value, so squared gaps stay below 2^126.
    const BigInt cap = BigInt(1) << 120;
    s.width_sq.push_back(wf >= cap ? (static_cast<__int128>(1) << 120) : small_to_int128(wf));
  }
  std::vector<std::size_t> all(shell.size());
  std::iota(all.begin(), all.end(), 0);
  s.search(0, all);

  // Witness: center each band on the midpoint of its members' projections.
  std::vector<UnitBand> bands;
  for (std::size_t j = 0; j < directions.size(); ++j) {
    std::int64_t lo = INT64_MAX;
    std::int64_t hi = INT64_MIN;
    for (auto i : s.best) {
      lo = std::min(lo, s.y[j][i]);
      hi = std::max(hi, s.y[j][i]);
    }
    const ExactRational mid = (to_rational(lo) + to_rational(hi)) / 2;
    const ExactRational unorm = ExactRational(from_int128(norm_sq128(directions[j])));
    RationalPoint anchor;
    for (auto c : directions[j]) anchor.push_back(mid / unorm * to_rational(c));
    bands.push_back(UnitBand{frame[j], anchor, half_width});
  }
  BandFamily family(std::move(bands), d);
  const auto check = family_count(shell, family);
  if (check.count != s.best.size()) throw ComputationError("band witness does not reproduce the optimum");
  result.count = check.count;
  result.members = check.members;
  result.witness = std::move(family);
  return result;
}

std::vector<LatticePoint> candidate_directions(const Shell& shell, const BandSearchConfig& config) {
  const int d = shell.dim();
  std::set<LatticePoint> dirs;
  auto add = [&](LatticePoint v) {
    v = primitive_direction(std::move(v));
    if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; })) dirs.insert(std::move(v));
  };
  if (config.axes) {
    for (int i = 0; i < d; ++i) {
      LatticePoint e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = 1;
      add(e);
    }
  }
  const std::size_t n = shell.size();
  if (config.point_pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      add(shell.point_vec(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        LatticePoint s(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) s[static_cast<std::size_t>(t)] = shell.point(i)[t] + shell.point(j)[t];
        add(std::move(s));
      }
    }
  }
  if (config.triple_normals && d == 3 && n <= 64) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          auto p = shell.point(i);
          auto q = shell.point(j);
          auto r = shell.point(k);
          const std::int64_t a[3] = {q[0] - p[0], q[1] - p[1], q[2] - p[2]};
          const std::int64_t b[3] = {r[0] - p[0], r[1] - p[1], r[2] - p[2]};
          add({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
        }
      }
    }
  }
  std::vector<LatticePoint> out(dirs.begin(), dirs.end());
  std::stable_sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    const auto na = norm_sq128(a);
    const auto nb = norm_sq128(b);
    return na != nb ? na < nb : a < b;
  });
  if (out.size() > config.max_directions) out.resize(config.max_directions);
  return out;
}

BandSearchResult max_band_intersection(const Shell& shell, int k, const BandSearchConfig& config) {
  const int d = shell.dim();
  if (k < 1 || k > d - 1) throw InvalidArgument("band count k must satisfy 1 <= k <= d - 1");
  BandSearchResult best;
  std::size_t tuples = 0;
  auto run = [&](const std::vector<LatticePoint>& tuple) {
    auto r = max_over_anchors(shell, tuple, config.half_width);
    ++tuples;
    if (!best.witness || r.count > best.count) best = std::move(r);
  };
  for (const auto& tuple : config.fixed_directions) {
    if (static_cast<int>(tuple.size()) != k) throw InvalidArgument("fixed direction tuple has wrong size");
    run(tuple);
  }
  if (config.point_pairs || config.triple_normals || config.axes) {
    const auto dirs = candidate_directions(shell, config);
    const ExactRational nu_sq = transversality_nu_sq(k, d);
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (tuples >= config.max_tuples + config.fixed_directions.size()) return;
      if (static_cast<int>(pick.size()) == k) {
        std::vector<LatticePoint> tuple;
        std::vector<RationalPoint> frame;
        for (auto i : pick) {
          tuple.push_back(dirs[i]);
          frame.push_back(to_rational_point(dirs[i]));
        }
        if (is_transverse(frame, nu_sq)) run(tuple);
        return;
      }
      for (std::size_t i = start; i < dirs.size(); ++i) {
        pick.push_back(i);
        self(self, i + 1);
        pick.pop_back();
        if (tuples >= config.max_tuples + config.fixed_directions.size()) return;
      }
    };
    rec(rec, 0);
  }
  best.tuples_searched = tuples;
  return best;
}

int dyadic_level(const ExactRational& s, const ExactRational& u_norm_sq) {
  const ExactRational s2 = s * s;
  if (s2 <= u_norm_sq) return 0;
  int p = 1;
  ExactRational bound = 4 * u_norm_sq;
  while (s2 > bound) {
    bound *= 4;
    ++p;
  }
  return p;
}

DyadicPartition dyadic_decompose(const Shell& shell, const RationalPoint& u,
                                 std::span<const std::int64_t> anchor) {
  require_dim(u.size(), shell.dim());
  if (norm_sq(u) == 0) throw InvalidArgument("dyadic direction must be nonzero");
  if (!shell.contains(anchor)) throw InvalidArgument("dyadic anchor must be a shell point");
  DyadicPartition part;
  part.anchor.assign(anchor.begin(), anchor.end());
  part.direction = u;
  const ExactRational unorm = norm_sq(u);
  std::vector<std::set<std::int64_t>> bins;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto x = shell.point(i);
    ExactRational s = 0;
    for (std::size_t t = 0; t < u.size(); ++t) s += u[t] * to_rational(anchor[t] - x[t]);
    const int p = dyadic_level(s, unorm);
    if (static_cast<std::size_t>(p) >= part.levels.size()) {
      part.levels.resize(static_cast<std::size_t>(p) + 1);
      bins.resize(static_cast<std::size_t>(p) + 1);
    }
    part.levels[static_cast<std::size_t>(p)].push_back(i);
    // ceil(|s| / |u|): smallest j >= 0 with j²|u|² >= s².
    const ExactRational s2 = s * s;
    auto j = static_cast<std::int64_t>(std::ceil(std::sqrt(ExactRational(s2 / unorm).get_d())));
    while (j > 0 && ExactRational(to_rational((j - 1) * (j - 1))) * unorm >= s2) --j;
    while (ExactRational(to_rational(j * j)) * unorm < s2) ++j;
    bins[static_cast<std::size_t>(p)].insert(sgn(s) * j);
  }
  for (const auto& b : bins) part.unit_bands.push_back(b.size());
  return part;
}

}  // namespace toral
