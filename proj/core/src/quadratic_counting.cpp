#include "toral/quadratic_counting.hpp"

#include <algorithm>
#include <map>

#include "toral/error.hpp"
#include "toral/parallel.hpp"

namespace toral {
namespace {

constexpr unsigned long kTrialLimit = 10000;

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt cdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const BigInt& d, const BigInt& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

bool probably_prime(const BigInt& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::optional<BigInt> pollard_brent(const BigInt& n, unsigned long c, std::size_t budget) {
  if (divides(2, n)) return BigInt(2);
  BigInt y = 2, x, ys, q = 1, g = 1;
  std::size_t r = 1;
  const std::size_t m = 128;
  std::size_t steps = 0;
  auto f = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  do {
    x = y;
    for (std::size_t i = 0; i < r; ++i) f(y);
    std::size_t k = 0;
    do {
      ys = y;
      const std::size_t lim = std::min(m, r - k);
      for (std::size_t i = 0; i < lim; ++i) {
        f(y);
        q = q * abs(x - y);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      steps += lim;
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
    if (steps > budget) return std::nullopt;
  } while (g == 1);
  if (g == n) {
    do {
      f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

}  // namespace

Factorization factorize(const BigInt& n_in, std::size_t rho_budget) {
  if (n_in == 0) throw InvalidArgument("cannot factor 0");
  BigInt n = abs(n_in);
  std::map<BigInt, unsigned> primes;
  for (unsigned long p = 2; p < kTrialLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++primes[BigInt(p)];
      n /= p;
    }
  }
  BigInt unfactored = 1;
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    BigInt c = stack.back();
    stack.pop_back();
    if (c == 1) continue;
    if (probably_prime(c)) {
      ++primes[c];
      continue;
    }
    BigInt root;
    if (mpz_perfect_square_p(c.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), c.get_mpz_t());
      stack.push_back(root);
      stack.push_back(root);
      continue;
    }
    std::optional<BigInt> g;
    for (unsigned long k = 1; k <= 4 && !g; ++k) g = pollard_brent(c, k, rho_budget);
    if (!g) {
      unfactored *= c;
      continue;
    }
    stack.push_back(*g);
    stack.push_back(c / *g);
  }
  for (auto& [p, e] : primes) {
    while (unfactored != 1 && divides(p, unfactored)) {
      unfactored /= p;
      ++e;
    }
  }
  Factorization out;
  out.factors.assign(primes.begin(), primes.end());
  out.unfactored = unfactored;
  return out;
}

SquarefreeParts squarefree_decompose(const BigInt& n) {
  if (n <= 0) throw InvalidArgument("squarefree_decompose requires n >= 1");
  const Factorization f = factorize(n);
  SquarefreeParts out{1, 1, true};
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 1) out.P *= p;
    for (unsigned i = 0; i < e / 2; ++i) out.Q *= p;
  }
  if (!f.complete()) {
    BigInt root;
    if (mpz_perfect_square_p(f.unfactored.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), f.unfactored.get_mpz_t());
      out.Q *= root;
    } else {
      out.P *= f.unfactored;
      out.certified = false;
    }
  }
  return out;
}

BigInt divisor_count(const BigInt& k) {
  if (k == 0) throw InvalidArgument("divisor_count requires K != 0");
  const Factorization f = factorize(k);
  if (!f.complete()) throw ComputationError("could not factor " + k.get_str());
  BigInt t = 1;
  for (const auto& [p, e] : f.factors) t *= e + 1;
  return t;
}

NormFormInstance complete_squares(const ConicForm& c) {
  NormFormInstance nf;
  nf.delta = c.discriminant();
  if (nf.delta <= 0) throw ComputationError("conic leading form is not positive definite");
  const auto parts = squarefree_decompose(nf.delta);
  nf.P = parts.P;
  nf.Q = parts.Q;
  nf.squarefree_certified = parts.certified;
  nf.shift = c.A * c.E - c.C * c.D;
  nf.K = nf.shift * nf.shift - (c.A * c.F - c.D * c.D) * nf.delta;
  return nf;
}

std::vector<std::pair<BigInt, BigInt>> represent_norm_form(const BigInt& p, const BigInt& k) {
  if (p < 1) throw InvalidArgument("norm form requires P >= 1");
  if (k < 0) return {};
  if (k > BigInt("100000000000000")) throw ComputationError("norm form value too large for exhaustive search");
  const std::int64_t kk = k.get_si();
  const std::int64_t pp = p.fits_slong_p() && p <= k ? p.get_si() : kk + 1;
  const std::int64_t ymax = isqrt(kk / pp);
  constexpr std::int64_t kBlock = 1 << 14;
  const auto blocks = static_cast<std::size_t>(ymax / kBlock + 1);
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> parts(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::int64_t y0 = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t y1 = std::min(ymax, y0 + kBlock - 1);
    for (std::int64_t y = y0; y <= y1; ++y) {
      std::int64_t x = 0;
      if (!is_square(kk - pp * y * y, &x)) continue;
      for (int sy : {-1, 1}) {
        if (y == 0 && sy == 1) continue;
        for (int sx : {-1, 1}) {
          if (x == 0 && sx == 1) continue;
          parts[b].emplace_back(sx * x, sy * y);
        }
      }
    }
  });
  std::vector<std::pair<BigInt, BigInt>> out;
  for (const auto& part : parts) {
    for (const auto& [x, y] : part) out.emplace_back(to_big(x), to_big(y));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

CircleCount embedded_circle_count(const LatticePoint& a1, const LatticePoint& a2, const LatticePoint& a3) {
  CircleCount result;
  auto& tr = result.trace;
  tr.center = circumcenter(a1, a2, a3);
  tr.plane = plane_through(a1, a2, a3);
  const std::size_t d = a1.size();
  const RationalPoint a1r = to_rational_point(a1);
  RationalPoint w(d);
  tr.radius_sq = 0;
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = tr.plane.v0[i] - tr.center[i];
    tr.radius_sq += (a1r[i] - tr.center[i]) * (a1r[i] - tr.center[i]);
  }
  const auto& v1 = tr.plane.v1;
  const auto& v2 = tr.plane.v2;
  // |W + x1 V1 + x2 V2|² = R² over Q, then cleared to coprime integers.
  const ExactRational coef[6] = {dot(v1, v1), dot(v2, v2), dot(v1, v2), dot(v1, w), dot(v2, w),
                                 dot(w, w) - tr.radius_sq};
  BigInt l = 1;
  for (const auto& c : coef) l = lcm(l, c.get_den());
  BigInt ints[6];
  BigInt g = 0;
  for (int i = 0; i < 6; ++i) {
    ints[i] = coef[i].get_num() * (l / coef[i].get_den());
    g = gcd(g, ints[i]);
  }
  for (auto& v : ints) v /= g;
  tr.scale = ExactRational(l, g);
  tr.scale.canonicalize();
  tr.conic = ConicForm{ints[0], ints[1], ints[2], ints[3], ints[4], ints[5]};
  const ConicForm& cf = tr.conic;
  tr.norm = complete_squares(cf);
  const NormFormInstance& nf = tr.norm;

  if (nf.K > 0 && nf.K <= BigInt("1000000000000")) {
    tr.r_p_k = represent_norm_form(nf.P, nf.K).size();
    tr.tau_k = divisor_count(nf.K);
    if (BigInt(static_cast<unsigned long>(*tr.r_p_k)) > 6 * *tr.tau_k) {
      throw ComputationError("representation count exceeds 6 tau(K)");
    }
  }

  if (nf.K >= 0) {
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), nf.K.get_mpz_t());
    const BigInt lo = cdiv(-s - nf.shift, nf.delta);
    const BigInt hi = fdiv(s - nf.shift, nf.delta);
    if (hi - lo > BigInt(100000000)) throw ComputationError("circle enumeration range too large");
    for (BigInt x2 = lo; x2 <= hi; ++x2) {
      ++tr.candidates;
      const BigInt x = nf.delta * x2 + nf.shift;
      const BigInt rem = nf.K - x * x;
      BigInt ysq;
      BigInt y0;
      if (!divides(nf.P, rem)) {
        ++tr.rejected_norm;
        continue;
      }
      ysq = rem / nf.P;
      if (!is_square(ysq, &y0)) {
        ++tr.rejected_norm;
        continue;
      }
      for (int sign : {1, -1}) {
        if (sign == -1 && y0 == 0) break;
        const BigInt y = sign * y0;
        if (!divides(nf.Q, y)) {
          ++tr.rejected_q;
          continue;
        }
        const BigInt z = y / nf.Q - cf.C * x2 - cf.D;
        if (!divides(cf.A, z)) {
          ++tr.rejected_a;
          continue;
        }
        const BigInt x1 = z / cf.A;
        if (cf.evaluate(x1, x2) != 0) throw ComputationError("inverse substitution left the conic");
        const RationalPoint xp = tr.plane.at(ExactRational(x1), ExactRational(x2));
        LatticePoint lp;
        bool integral = true;
        for (const auto& c : xp) {
          if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
            integral = false;
            break;
          }
          lp.push_back(c.get_num().get_si());
        }
        if (!integral) {
          ++tr.rejected_lift;
          continue;
        }
        tr.solutions.push_back(CircleSolution{x, y, x1, x2, lp});
        result.points.push_back(std::move(lp));
      }
    }
  }
  std::sort(result.points.begin(), result.points.end());
  result.points.erase(std::unique(result.points.begin(), result.points.end()), result.points.end());
  result.count = result.points.size();
  return result;
}

}  // namespace toral
