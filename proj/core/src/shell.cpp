#include "toral/shell.hpp"

#include <algorithm>
#include <cmath>

#include "toral/error.hpp"

namespace toral {
namespace {

void check_args(int d, std::int64_t m) {
  if (d < 2) throw InvalidArgument("dimension must be at least 2");
  if (m < 1) throw InvalidArgument("m must be a positive integer");
  if (m > kMaxShellM) throw InvalidArgument("m too large for exact 64-bit enumeration");
}

// Two-square table: for every r <= limit, the pairs (a, b) with a² + b² = r in
// lexicographic order, stored CSR style.
struct TwoSquareTable {
  std::vector<std::uint32_t> offset;  // size limit + 2
  std::vector<std::int32_t> pairs;    // a0, b0, a1, b1, ...

  explicit TwoSquareTable(std::int64_t limit) {
    const auto s = isqrt(limit);
    std::vector<std::uint32_t> count(static_cast<std::size_t>(limit) + 2, 0);
    for (std::int64_t a = -s; a <= s; ++a) {
      const std::int64_t rest = limit - a * a;
      const std::int64_t t = isqrt(rest);
      for (std::int64_t b = -t; b <= t; ++b) ++count[static_cast<std::size_t>(a * a + b * b) + 1];
    }
    for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
    offset = count;
    pairs.resize(2 * static_cast<std::size_t>(offset.back()));
    std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
    for (std::int64_t a = -s; a <= s; ++a) {
      const std::int64_t t = isqrt(limit - a * a);
      for (std::int64_t b = -t; b <= t; ++b) {
        const auto r = static_cast<std::size_t>(a * a + b * b);
        const auto k = cursor[r]++;
        pairs[2 * k] = static_cast<std::int32_t>(a);
        pairs[2 * k + 1] = static_cast<std::int32_t>(b);
      }
    }
  }
};

// Tables are only worth their O(m) memory for moderate m.
constexpr std::int64_t kTableLimit = std::int64_t{1} << 20;

class Enumerator {
 public:
  Enumerator(int d, std::int64_t m) : d_(d), prefix_(static_cast<std::size_t>(d), 0) {
    if (d >= 4 && m <= kTableLimit) table_.emplace(m);
  }

  void run(std::int64_t m) { descend(0, m); }
  std::vector<std::int64_t> take() { return std::move(out_); }

 private:
  void emit_pair(std::int64_t a, std::int64_t b) {
    prefix_[static_cast<std::size_t>(d_ - 2)] = a;
    prefix_[static_cast<std::size_t>(d_ - 1)] = b;
    out_.insert(out_.end(), prefix_.begin(), prefix_.end());
  }

  void last_two(std::int64_t rem) {
    if (table_) {
      const auto lo = table_->offset[static_cast<std::size_t>(rem)];
      const auto hi = table_->offset[static_cast<std::size_t>(rem) + 1];
      for (auto k = lo; k < hi; ++k) emit_pair(table_->pairs[2 * k], table_->pairs[2 * k + 1]);
      return;
    }
    const auto s = isqrt(rem);
    for (std::int64_t a = -s; a <= s; ++a) {
      std::int64_t b = 0;
      if (!is_square(rem - a * a, &b)) continue;
      if (b == 0) {
        emit_pair(a, 0);
      } else {
        emit_pair(a, -b);
        emit_pair(a, b);
      }
    }
  }

  void descend(int i, std::int64_t rem) {
    if (i == d_ - 2) {
      last_two(rem);
      return;
    }
    const auto s = isqrt(rem);
    for (std::int64_t x = -s; x <= s; ++x) {
      prefix_[static_cast<std::size_t>(i)] = x;
      descend(i + 1, rem - x * x);
    }
  }

  int d_;
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> out_;
  std::optional<TwoSquareTable> table_;
};

}  // namespace

Shell::Shell(int d, std::int64_t m, std::vector<LatticePoint> points) : d_(d), m_(m) {
  check_args(d, m);
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw InvalidArgument("duplicate shell point");
  }
  coords_.reserve(points.size() * static_cast<std::size_t>(d));
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d) throw InvalidArgument("point dimension mismatch");
    if (norm_sq128(p) != m) throw InvalidArgument("point not on the sphere |n|^2 = m");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
}

double Shell::lambda() const { return std::sqrt(static_cast<double>(m_)); }

std::vector<LatticePoint> Shell::points() const {
  std::vector<LatticePoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point_vec(i));
  return out;
}

std::optional<std::size_t> Shell::index_of(std::span<const std::int64_t> p) const {
  if (static_cast<int>(p.size()) != d_) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(point(mid), p)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::equal(p.begin(), p.end(), point(lo).begin())) return lo;
  return std::nullopt;
}

bool Shell::is_symmetric_closed() const {
  for (std::size_t i = 0; i < size(); ++i) {
    LatticePoint p = point_vec(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      LatticePoint q = p;
      q[j] = -q[j];
      if (!contains(q)) return false;
      for (std::size_t k = j + 1; k < p.size(); ++k) {
        LatticePoint r = p;
        std::swap(r[j], r[k]);
        if (!contains(r)) return false;
      }
    }
  }
  return true;
}

Shell enumerate_shell(int d, std::int64_t m) {
  check_args(d, m);
  Enumerator e(d, m);
  e.run(m);
  return Shell(Shell::Raw{}, d, m, e.take());
}

std::size_t representation_count(int d, std::int64_t m) { return enumerate_shell(d, m).size(); }

}  // namespace toral
