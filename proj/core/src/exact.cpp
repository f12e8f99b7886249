#include "toral/exact.hpp"

#include <cmath>
#include <cstdlib>

#include "toral/error.hpp"

namespace toral {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw InvalidArgument("malformed integer '" + std::string(s) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') {
      throw InvalidArgument("malformed integer '" + std::string(s) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return BigInt(digits, 10);
}

}  // namespace

ExactRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  ExactRational r;
  if (slash == std::string_view::npos) {
    r = ExactRational(parse_integer(text));
  } else {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    r = ExactRational(num, den);
    r.canonicalize();
  }
  return r;
}

std::string to_string(const ExactRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

LatticePoint parse_lattice_point(std::string_view text) {
  LatticePoint out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    BigInt v = parse_integer(text.substr(start, comma - start));
    if (!v.fits_slong_p()) throw InvalidArgument("coordinate out of range in '" + std::string(text) + "'");
    out.push_back(v.get_si());
    start = comma + 1;
  }
  return out;
}

BigInt height(const ExactRational& x) {
  // mpq values are kept canonical, so numerator and denominator are coprime.
  if (x == 0) return 1;
  BigInt p = abs(x.get_num());
  const BigInt& q = x.get_den();
  return p > q ? p : q;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InvalidArgument("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidArgument("isqrt of negative value");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(std::int64_t n, std::int64_t* root) {
  if (n < 0) return false;
  const std::int64_t r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

bool is_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

int sign_a_plus_b_sqrt(const ExactRational& a, const ExactRational& b, const ExactRational& s) {
  if (s < 0) throw InvalidArgument("negative radicand");
  const int sa = sgn(a);
  const int sb = (s == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  const int c = cmp(ExactRational(a * a), ExactRational(b * b * s));
  return sa > 0 ? c : -c;
}

int sign_sum_two_surds(const ExactRational& a, const ExactRational& b, const ExactRational& s1,
                       const ExactRational& c, const ExactRational& s2) {
  if (s2 < 0) throw InvalidArgument("negative radicand");
  // X = a + b*sqrt(s1), Y = c*sqrt(s2).
  const int sx = sign_a_plus_b_sqrt(a, b, s1);
  const int sy = (s2 == 0) ? 0 : sgn(c);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // Opposite signs: compare X² = a² + b²s1 + 2ab*sqrt(s1) with Y² = c²s2.
  const int mag = sign_a_plus_b_sqrt(ExactRational(a * a + b * b * s1 - c * c * s2), ExactRational(2 * a * b), s1);
  if (mag == 0) return 0;
  return mag > 0 ? sx : sy;
}

RationalPoint to_rational_point(std::span<const std::int64_t> p) {
  RationalPoint out;
  out.reserve(p.size());
  for (auto v : p) out.push_back(to_rational(v));
  return out;
}

ExactRational dot(const RationalPoint& a, const RationalPoint& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  ExactRational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

__int128 dot128(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

__int128 norm_sq128(std::span<const std::int64_t> a) { return dot128(a, a); }

BigInt from_int128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi;
  BigInt lo;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

LatticePoint primitive_direction(LatticePoint v) {
  std::int64_t g = 0;
  for (auto x : v) g = gcd64(g, x);
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace toral
