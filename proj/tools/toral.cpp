// toral: command-line front end for the toral core library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toral/band3d.hpp"
#include "toral/error.hpp"
#include "toral/json_io.hpp"
#include "toral/parallel.hpp"
#include "toral/quadratic_counting.hpp"
#include "toral/rational_geometry.hpp"
#include "toral/regions.hpp"
#include "toral/report.hpp"
#include "toral/restriction.hpp"
#include "toral/shell.hpp"

#ifdef TORAL_HAVE_ACCEPTANCE
#include "acceptance.hpp"
#endif

namespace {

using toral::json_io::json;
namespace jio = toral::json_io;

constexpr const char* kFooter = R"(Rationals are written as exact strings "p/q" (or integers); points as
comma-separated coordinates, e.g. 0,0,1 or 7/2,7/2. Frames are vectors
separated by ';'.

Output goes to --output, else to $TORAL_OUTPUT_DIR/<verb>.<ext> when that
variable is set, else to stdout.

report CSV columns (d = 2):
  m               shell parameter |x|^2
  r2              number of lattice points on the circle
  N1              exact maximum over caps of radius^2 floor(sqrt(m))
  A1              best unit band over axis, point and chord-normal directions
  ext_count       members of the extremal cap construction
  ext_ratio       norm^2 / (2|u|) of that construction, NA if the phase
                  condition fails
  random_norm_sq  norm^2 on the line (t, 0) of a seeded random eigenfunction
report CSV columns (d = 3):
  m, r3           shell parameter and number of points
  band_eq         points with 0 <= x3 <= 1
  A1              best unit band over the 13 directions in {-1,0,1}^3
  A2              best transverse pair of unit bands over six fixed axis pairs
  sub_count       members of the extremal cap on the x3 = 0 sub-circle (k = 2)
  sub_ratio       its norm^2 / baseline ratio, NA if empty
enumerate --format csv columns: one coordinate per column, x1..xd.

Exit status: 0 success, 1 computation failure (error JSON on stdout),
2 usage error.)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

toral::RationalPoint parse_rational_point(const std::string& s) {
  toral::RationalPoint p;
  for (const auto& part : split(s, ',')) p.push_back(toral::parse_rational(part));
  if (p.empty()) throw toral::InvalidArgument("empty point");
  return p;
}

std::vector<toral::RationalPoint> parse_frame(const std::string& s) {
  std::vector<toral::RationalPoint> out;
  for (const auto& v : split(s, ';')) out.push_back(parse_rational_point(v));
  return out;
}

toral::HighFloat to_high(const toral::ExactRational& q) {
  return toral::HighFloat(q.get_num().get_str()) / toral::HighFloat(q.get_den().get_str());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return json::parse(in);
}

class Sink {
 public:
  Sink(std::string output, std::string verb) : output_(std::move(output)), verb_(std::move(verb)) {}

  void json_result(const json& j) {
    const std::string bad = jio::roundtrip_mismatch(j);
    if (!bad.empty()) throw toral::ComputationError("json round trip failed at " + bad);
    text(j.dump(2) + "\n", "json");
  }

  void text(const std::string& body, const std::string& ext) {
    std::string path = output_;
    if (path.empty()) {
      if (const char* dir = std::getenv("TORAL_OUTPUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        path = (std::filesystem::path(dir) / (verb_ + "." + ext)).string();
      }
    }
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw toral::ComputationError("cannot write " + path);
    out << body;
  }

 private:
  std::string output_;
  std::string verb_;
};

json witness_band_family(const std::optional<toral::BandFamily>& f) {
  return f ? jio::band_family(*f) : json(nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice points on spheres and restrictions of toral eigenfunctions"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string output;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("--seed", seed, "Seed for randomized harnesses")->capture_default_str();
  app.add_option("--output,-o", output, "Output file");

  int d = 2;
  std::int64_t m = 0;
  int k = 1;
  std::string format = "json";

  auto add_shell = [&](CLI::App* sub) {
    sub->add_option("--d", d, "Dimension")->capture_default_str();
    sub->add_option("--m", m, "Squared radius m = lambda^2")->required();
  };

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Lattice points with |x|^2 = m");
  add_shell(enumerate);
  enumerate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // count-cap
  std::string center, radius_sq;
  auto* count_cap = app.add_subcommand("count-cap", "Shell points in the ball |x - center|^2 <= radius_sq");
  add_shell(count_cap);
  count_cap->add_option("--center", center, "Rational center")->required();
  count_cap->add_option("--radius-sq", radius_sq, "Rational squared radius")->required();

  // count-band
  std::string direction, anchor, half_width = "1/2";
  auto* count_band = app.add_subcommand("count-band", "Shell points with |u.(x - anchor)| <= w |u|");
  add_shell(count_band);
  count_band->add_option("--direction", direction, "Band normal u")->required();
  count_band->add_option("--anchor", anchor, "Point on the band's center plane")->required();
  count_band->add_option("--half-width", half_width, "Half width w")->capture_default_str();

  // extremal-cap
  auto* extremal_cap = app.add_subcommand("extremal-cap", "Exact maximum cap count with witness");
  add_shell(extremal_cap);
  extremal_cap->add_option("--radius-sq", radius_sq, "Squared radius (default floor(sqrt(m)))");

  // extremal-bands
  std::vector<std::string> fixed;
  std::size_t max_tuples = 20000;
  auto* extremal_bands = app.add_subcommand("extremal-bands", "Best transverse k-band intersection");
  add_shell(extremal_bands);
  extremal_bands->add_option("--k", k, "Number of bands")->capture_default_str();
  extremal_bands->add_option("--directions", fixed, "Fixed direction tuple(s), vectors separated by ';'");
  extremal_bands->add_option("--max-tuples", max_tuples, "Tuple budget")->capture_default_str();
  extremal_bands->add_option("--half-width", half_width, "Half width")->capture_default_str();

  // circumcenter / circle-count
  std::vector<std::string> pts;
  auto* circumcenter = app.add_subcommand("circumcenter", "Circumcenter and plane of three lattice points");
  circumcenter->add_option("points", pts, "A1 A2 A3")->expected(3)->required();
  auto* circle_count = app.add_subcommand("circle-count", "Lattice points on the circle through three points");
  circle_count->add_option("points", pts, "A1 A2 A3")->expected(3)->required();

  // tetra
  auto* tetra = app.add_subcommand("tetra", "Exact tetrahedron volume");
  tetra->add_option("points", pts, "A B C D in Z^3")->expected(4)->required();

  // band3d-census
  std::string axis, axis2, through, height, depth;
  auto* census = app.add_subcommand("band3d-census", "Lattice points in a band (or two transverse bands) in d = 3");
  census->add_option("--m", m, "Squared radius")->required();
  census->add_option("--axis", axis, "Band axis")->required();
  census->add_option("--height", height, "Lower height a of the band a <= x.axis/|axis| <= a + 1");
  census->add_option("--depth", depth, "Depth H below the north pole");
  census->add_option("--through", through, "Lattice point the band(s) must contain");
  census->add_option("--axis2", axis2, "Second axis; reports the two-band intersection");

  // sector-volume
  std::string theta;
  auto* sector = app.add_subcommand("sector-volume", "Convex hull volume bound of a band sector");
  sector->add_option("--m", m, "Squared radius")->required();
  sector->add_option("--depth", depth, "Depth H")->required();
  sector->add_option("--theta", theta, "Central angle in (0, 1)")->required();

  // restrict
  std::string eigen_file, frame, base, slope, sub_file;
  std::size_t quadrature = 0;
  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction norm^2 of an eigenfunction to a flat submanifold");
  restrict_cmd->add_option("--eigenfunction", eigen_file, "Eigenfunction JSON file")->required();
  restrict_cmd->add_option("--submanifold", sub_file, "Submanifold JSON file");
  restrict_cmd->add_option("--frame", frame, "Frame vectors separated by ';'");
  restrict_cmd->add_option("--base", base, "Base point (default origin)");
  restrict_cmd->add_option("--slope", slope, "Line (t, a t) in d = 2");
  restrict_cmd->add_option("--quadrature", quadrature, "Also evaluate the quadrature oracle with this many nodes");

  // extremal
  std::string kind = "cap";
  auto* extremal = app.add_subcommand("extremal", "Build and check an extremal construction");
  add_shell(extremal);
  extremal->add_option("--kind", kind, "cap, bands or subsphere")->check(CLI::IsMember({"cap", "bands", "subsphere"}));
  extremal->add_option("--k", k, "Submanifold dimension")->capture_default_str();
  extremal->add_option("--max-tuples", max_tuples, "Tuple budget for --kind bands")->capture_default_str();

  // hilbert-norm
  double mu = 1.0;
  std::size_t n = 512;
  auto* hilbert = app.add_subcommand("hilbert-norm", "Norm of the truncated operator sin(mu(t-s))/(t-s)");
  hilbert->add_option("--mu", mu, "mu")->capture_default_str();
  hilbert->add_option("--n", n, "Indices in [-N, N]")->capture_default_str();

  // verify
  std::string suite = "all";
  std::vector<int> only;
  std::string golden;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--suite", suite, "all")->check(CLI::IsMember({"all"}))->capture_default_str();
  verify->add_option("--only", only, "Run only these criteria");
  verify->add_option("--golden", golden, "Golden file directory");

  // report
  std::int64_t m_min = 1, m_max = 10000;
  auto* report = app.add_subcommand("report", "CSV sweep over m (columns listed below)");
  report->add_option("--d", d, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
  report->add_option("--m-min", m_min)->capture_default_str();
  report->add_option("--m-max", m_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  toral::set_thread_count(threads);
  const std::string verb = app.get_subcommands().front()->get_name();
  Sink sink(output, verb);

  try {
    auto lattice = [&](std::size_t i) { return toral::parse_lattice_point(pts.at(i)); };

    if (verb == "enumerate") {
      const auto s = toral::enumerate_shell(d, m);
      if (format == "csv") {
        std::ostringstream o;
        for (int i = 1; i <= d; ++i) o << (i > 1 ? "," : "") << "x" << i;
        o << "\n";
        for (const auto& p : s.points()) {
          for (std::size_t i = 0; i < p.size(); ++i) o << (i ? "," : "") << p[i];
          o << "\n";
        }
        sink.text(o.str(), "csv");
      } else {
        json j = jio::shell(s);
        j["count"] = s.size();
        sink.json_result(j);
      }
    } else if (verb == "count-cap") {
      const auto s = toral::enumerate_shell(d, m);
      const toral::Cap cap{parse_rational_point(center), toral::parse_rational(radius_sq)};
      if (static_cast<int>(cap.center.size()) != d) throw toral::InvalidArgument("center dimension mismatch");
      const auto r = toral::cap_count(s, cap);
      sink.json_result(jio::count_result(
          r.count, {{"center", jio::rational_point(cap.center)}, {"radius_sq", jio::rational(cap.radius_sq)}},
          r.members));
    } else if (verb == "count-band") {
      const auto s = toral::enumerate_shell(d, m);
      const toral::UnitBand b{parse_rational_point(direction), parse_rational_point(anchor),
                              toral::parse_rational(half_width)};
      b.validate();
      if (static_cast<int>(b.direction.size()) != d) throw toral::InvalidArgument("direction dimension mismatch");
      const auto r = toral::band_count(s, b);
      sink.json_result(jio::count_result(r.count, jio::band(b), r.members));
    } else if (verb == "extremal-cap") {
      const auto s = toral::enumerate_shell(d, m);
      const auto r2 = radius_sq.empty() ? toral::default_cap_radius_sq(m) : toral::parse_rational(radius_sq);
      const auto r = toral::max_cap_count(s, r2);
      sink.json_result(jio::count_result(r.count, r.witness ? jio::cap_witness(*r.witness) : json(nullptr), r.members));
    } else if (verb == "extremal-bands") {
      const auto s = toral::enumerate_shell(d, m);
      toral::BandSearchConfig cfg;
      cfg.half_width = toral::parse_rational(half_width);
      cfg.max_tuples = max_tuples;
      for (const auto& f : fixed) {
        std::vector<toral::LatticePoint> tuple;
        for (const auto& v : split(f, ';')) tuple.push_back(toral::parse_lattice_point(v));
        cfg.fixed_directions.push_back(tuple);
      }
      const auto r = toral::max_band_intersection(s, k, cfg);
      json j = jio::count_result(r.count, witness_band_family(r.witness), r.members);
      j["tuples_searched"] = r.tuples_searched;
      sink.json_result(j);
    } else if (verb == "circumcenter") {
      const auto c = toral::circumcenter(lattice(0), lattice(1), lattice(2));
      const auto p = toral::plane_through(lattice(0), lattice(1), lattice(2));
      sink.json_result({{"center", jio::rational_point(c)},
                        {"max_height", toral::max_height(c).get_str()},
                        {"plane",
                         {{"i1", p.i1},
                          {"i2", p.i2},
                          {"v0", jio::rational_point(p.v0)},
                          {"v1", jio::rational_point(p.v1)},
                          {"v2", jio::rational_point(p.v2)}}}});
    } else if (verb == "circle-count") {
      sink.json_result(jio::circle_count(toral::embedded_circle_count(lattice(0), lattice(1), lattice(2))));
    } else if (verb == "tetra") {
      for (std::size_t i = 0; i < 4; ++i) {
        if (lattice(i).size() != 3) throw toral::InvalidArgument("tetra needs points in Z^3");
      }
      const auto v = toral::tetra_volume(lattice(0), lattice(1), lattice(2), lattice(3));
      sink.json_result({{"volume", jio::rational(v)}, {"coplanar", v == 0}});
    } else if (verb == "band3d-census") {
      const auto s = toral::enumerate_shell(3, m);
      const auto ax = toral::parse_lattice_point(axis);
      auto make_band = [&](const toral::LatticePoint& a) {
        if (!through.empty()) return toral::band_through(m, a, toral::parse_lattice_point(through));
        if (!depth.empty()) return toral::Band3D{toral::BandProfile3D::from_depth(m, toral::parse_rational(depth)), a};
        if (!height.empty()) return toral::Band3D{toral::BandProfile3D::at_height(m, toral::parse_rational(height)), a};
        return toral::Band3D{toral::BandProfile3D::equatorial(m), a};
      };
      const auto b1 = make_band(ax);
      if (axis2.empty()) {
        json j = jio::a13(toral::census_A13(s, b1));
        j["band"] = jio::band3d(b1);
        sink.json_result(j);
      } else {
        const auto b2 = make_band(toral::parse_lattice_point(axis2));
        json j = jio::a23(toral::census_A23(s, b1, b2));
        j["band1"] = jio::band3d(b1);
        j["band2"] = jio::band3d(b2);
        sink.json_result(j);
      }
    } else if (verb == "sector-volume") {
      const auto h = to_high(toral::parse_rational(depth));
      const auto th = to_high(toral::parse_rational(theta));
      const auto v = toral::sector_hull_volume(m, h, th);
      const auto g = toral::band_radius_and_width(m, h);
      sink.json_result({{"m", m},
                        {"H", depth},
                        {"theta", theta},
                        {"R", static_cast<double>(g.R)},
                        {"R0", static_cast<double>(g.R0)},
                        {"volume", static_cast<double>(v)},
                        {"volume_digits", v.str(30)}});
    } else if (verb == "restrict") {
      const auto e = jio::eigenfunction(read_json_file(eigen_file));
      toral::GeodesicSubmanifold sub;
      if (!sub_file.empty()) {
        sub = jio::submanifold(read_json_file(sub_file));
      } else if (!slope.empty()) {
        sub = toral::GeodesicSubmanifold::line(toral::parse_rational(slope));
      } else if (!frame.empty()) {
        sub.frame = parse_frame(frame);
        sub.base = base.empty() ? toral::RationalPoint(sub.frame.front().size(), 0) : parse_rational_point(base);
      } else {
        throw UsageError("restrict needs --submanifold, --frame or --slope");
      }
      if (!base.empty() && sub_file.empty()) sub.base = parse_rational_point(base);
      json j = {{"submanifold", jio::submanifold(sub)},
                {"wedge_norm", sub.wedge_norm()},
                {"norm_sq", toral::restriction_norm_sq(e, sub)}};
      if (quadrature > 0) j["quadrature_norm_sq"] = toral::quadrature_restriction_norm(e, sub, quadrature);
      sink.json_result(j);
    } else if (verb == "extremal") {
      const auto s = toral::enumerate_shell(d, m);
      toral::ExtremalConstruction c = [&] {
        if (kind == "cap") {
          return toral::build_extremal_cap_2d(s, toral::max_cap_count(s, toral::default_cap_radius_sq(m)).members);
        }
        if (kind == "subsphere") return toral::build_extremal_subsphere_cap(s, k);
        toral::BandSearchConfig cfg;
        cfg.max_tuples = max_tuples;
        const auto r = toral::max_band_intersection(s, k, cfg);
        if (!r.witness) throw toral::InvalidArgument("no band witness");
        std::vector<toral::LatticePoint> dirs;
        for (const auto& b : r.witness->bands()) {
          toral::LatticePoint v;
          for (const auto& x : b.direction) {
            if (x.get_den() != 1) throw toral::ComputationError("non-integral band direction");
            v.push_back(x.get_num().get_si());
          }
          dirs.push_back(v);
        }
        return toral::build_extremal_band_intersection(s, dirs, r.members);
      }();
      sink.json_result(jio::extremal(c));
    } else if (verb == "hilbert-norm") {
      const auto r = toral::hilbert_truncated_norm({mu, n});
      sink.json_result({{"mu", mu}, {"n", n}, {"norm", r.norm}, {"iterations", r.iterations}, {"converged", r.converged}});
    } else if (verb == "verify") {
#ifdef TORAL_HAVE_ACCEPTANCE
      toral::acceptance::Options opt;
      opt.seed = seed;
      opt.golden_dir = golden;
      opt.only.insert(only.begin(), only.end());
      const auto results = toral::acceptance::run(opt, std::cerr);
      json j = json::array();
      bool ok = true;
      for (const auto& r : results) {
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        ok = ok && r.pass;
      }
      sink.text(json({{"passed", ok}, {"criteria", j}}).dump(2) + "\n", "json");
      return ok ? 0 : 1;
#else
      throw toral::ComputationError("built without the acceptance suite");
#endif
    } else if (verb == "report") {
      sink.text(toral::report_csv({d, m_min, m_max, seed}), "csv");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cout << json({{"error", e.what()}, {"kind", "invalid_input"}}).dump() << "\n";
    return 1;
  } catch (const toral::InvalidArgument& e) {
    std::cout << json({{"error", e.what()}, {"kind", "invalid_argument"}}).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json({{"error", e.what()}, {"kind", "computation"}}).dump() << "\n";
    return 1;
  }
  return 0;
}
