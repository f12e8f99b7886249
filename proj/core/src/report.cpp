#include "toral/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "toral/band3d.hpp"
#include "toral/error.hpp"
#include "toral/parallel.hpp"
#include "toral/regions.hpp"
#include "toral/restriction.hpp"
#include "toral/shell.hpp"

namespace toral {
namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string row_d2(std::int64_t m, std::uint64_t seed) {
  const Shell s = enumerate_shell(2, m);
  if (s.empty()) return "";
  const auto cap = max_cap_count(s, default_cap_radius_sq(m));
  BandSearchConfig cfg;
  cfg.triple_normals = false;
  const auto band = max_band_intersection(s, 1, cfg);
  std::string ext_count = "NA";
  std::string ext_ratio = "NA";
  try {
    const auto ext = build_extremal_cap_2d(s, cap.members);
    ext_count = std::to_string(ext.count);
    ext_ratio = fmt(ext.ratio);
  } catch (const InvalidArgument&) {
  }
  Rng rng(seed ^ (static_cast<std::uint64_t>(m) * 0x9E3779B97F4A7C15ULL));
  const double rnd = restriction_norm_sq(Eigenfunction::random(s, rng), GeodesicSubmanifold::line(0));
  std::ostringstream o;
  o << m << ',' << s.size() << ',' << cap.count << ',' << band.count << ',' << ext_count << ',' << ext_ratio << ','
    << fmt(rnd) << '\n';
  return o.str();
}

std::string row_d3(std::int64_t m) {
  const Shell s = enumerate_shell(3, m);
  if (s.empty()) return "";
  const Band3D equator{BandProfile3D::equatorial(m), {0, 0, 1}};
  std::size_t band_eq = 0;
  for (std::size_t i = 0; i < s.size(); ++i) band_eq += equator.contains(s.point(i)) ? 1 : 0;
  std::size_t a1 = 0;
  for (std::int64_t x = -1; x <= 1; ++x) {
    for (std::int64_t y = -1; y <= 1; ++y) {
      for (std::int64_t z = -1; z <= 1; ++z) {
        const LatticePoint v{x, y, z};
        if (primitive_direction(v) != v || (x == 0 && y == 0 && z == 0)) continue;
        a1 = std::max(a1, max_over_anchors(s, {v}, ExactRational(1, 2)).count);
      }
    }
  }
  const std::vector<std::vector<LatticePoint>> pairs = {
      {{1, 0, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}},
      {{1, 1, 0}, {0, 0, 1}}, {{1, 0, 1}, {0, 1, 0}}, {{0, 1, 1}, {1, 0, 0}}};
  std::size_t a2 = 0;
  for (const auto& p : pairs) a2 = std::max(a2, max_over_anchors(s, p, ExactRational(1, 2)).count);
  std::string sub_count = "NA";
  std::string sub_ratio = "NA";
  try {
    const auto ext = build_extremal_subsphere_cap(s, 2);
    sub_count = std::to_string(ext.count);
    sub_ratio = fmt(ext.ratio);
  } catch (const InvalidArgument&) {
  }
  std::ostringstream o;
  o << m << ',' << s.size() << ',' << band_eq << ',' << a1 << ',' << a2 << ',' << sub_count << ',' << sub_ratio << '\n';
  return o.str();
}

}  // namespace

void write_report(std::ostream& out, const ReportConfig& config) {
  if (config.d != 2 && config.d != 3) throw InvalidArgument("report supports d = 2 or 3");
  if (config.m_min < 1 || config.m_max < config.m_min) throw InvalidArgument("invalid m range");
  const auto count = static_cast<std::size_t>(config.m_max - config.m_min + 1);
  std::vector<std::string> rows(count);
  parallel_blocks(count, [&](std::size_t i) {
    const std::int64_t m = config.m_min + static_cast<std::int64_t>(i);
    rows[i] = config.d == 2 ? row_d2(m, config.seed) : row_d3(m);
  });
  out << (config.d == 2 ? "m,r2,N1,A1,ext_count,ext_ratio,random_norm_sq\n"
                        : "m,r3,band_eq,A1,A2,sub_count,sub_ratio\n");
  for (const auto& r : rows) out << r;
}

std::string report_csv(const ReportConfig& config) {
  std::ostringstream o;
  write_report(o, config);
  return o.str();
}

}  // namespace toral
