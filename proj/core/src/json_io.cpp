#include "toral/json_io.hpp"

#include "toral/error.hpp"

namespace toral::json_io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

LatticePoint lattice_point(const json& j) {
  if (!j.is_array()) throw InvalidArgument("lattice point must be an array");
  LatticePoint p;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw InvalidArgument("lattice coordinates must be integers");
    p.push_back(c.get<std::int64_t>());
  }
  return p;
}

json high(const HighFloat& x) { return static_cast<double>(x); }

std::string check(const json& j, const std::string& path);

std::string check_known(const std::string& key, const json& v, const std::string& path) {
  try {
    if (key == "shell" && v.is_object()) return shell(shell(v)) == v ? "" : path;
    if (key == "eigenfunction" && v.is_object()) return eigenfunction(eigenfunction(v)) == v ? "" : path;
    if (key == "submanifold" && v.is_object()) return submanifold(submanifold(v)) == v ? "" : path;
    if ((key == "members" || key == "points") && v.is_array()) return lattice_points(lattice_points(v)) == v ? "" : path;
    if (key == "witness" && v.is_object()) {
      if (v.contains("bands")) return band_family(band_family(v)) == v ? "" : path;
      if (v.contains("t_sq")) return cap_witness(cap_witness(v)) == v ? "" : path;
    }
    if ((key == "band" || key == "band1" || key == "band2") && v.is_object()) return band3d(band3d(v)) == v ? "" : path;
  } catch (const std::exception&) {
    return path;
  }
  return check(v, path);
}

std::string check(const json& j, const std::string& path) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto bad = check_known(it.key(), it.value(), path + "/" + it.key());
      if (!bad.empty()) return bad;
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto bad = check(j[i], path + "/" + std::to_string(i));
      if (!bad.empty()) return bad;
    }
  }
  return "";
}

}  // namespace

json rational(const ExactRational& q) { return to_string(q); }

ExactRational rational(const json& j) {
  if (j.is_number_integer()) return to_rational(j.get<std::int64_t>());
  if (!j.is_string()) throw InvalidArgument("rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

json rational_point(const RationalPoint& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(rational(c));
  return a;
}

RationalPoint rational_point(const json& j) {
  if (!j.is_array()) throw InvalidArgument("rational point must be an array");
  RationalPoint p;
  for (const auto& c : j) p.push_back(rational(c));
  return p;
}

json lattice_points(const std::vector<LatticePoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

std::vector<LatticePoint> lattice_points(const json& j) {
  if (!j.is_array()) throw InvalidArgument("point list must be an array");
  std::vector<LatticePoint> out;
  for (const auto& p : j) out.push_back(lattice_point(p));
  return out;
}

json shell(const Shell& s) { return {{"d", s.dim()}, {"m", s.m()}, {"points", lattice_points(s.points())}}; }

Shell shell(const json& j) {
  return Shell(field(j, "d").get<int>(), field(j, "m").get<std::int64_t>(), lattice_points(field(j, "points")));
}

json eigenfunction(const Eigenfunction& e) {
  json coeffs = json::array();
  for (std::size_t i = 0; i < e.support().size(); ++i) {
    coeffs.push_back({{"n", e.support()[i]}, {"re", e.coeffs()[i].real()}, {"im", e.coeffs()[i].imag()}});
  }
  return {{"m", e.shell().m()}, {"d", e.shell().dim()}, {"coeffs", coeffs}};
}

Eigenfunction eigenfunction(const json& j) {
  const int d = field(j, "d").get<int>();
  const auto m = field(j, "m").get<std::int64_t>();
  std::vector<LatticePoint> support;
  std::vector<Complex> coeffs;
  for (const auto& c : field(j, "coeffs")) {
    support.push_back(lattice_point(field(c, "n")));
    coeffs.emplace_back(field(c, "re").get<double>(), field(c, "im").get<double>());
  }
  return Eigenfunction(enumerate_shell(d, m), std::move(support), std::move(coeffs));
}

json submanifold(const GeodesicSubmanifold& s) {
  json frame = json::array();
  for (const auto& u : s.frame) frame.push_back(rational_point(u));
  return {{"frame", frame}, {"base", rational_point(s.base)}};
}

GeodesicSubmanifold submanifold(const json& j) {
  GeodesicSubmanifold s;
  for (const auto& u : field(j, "frame")) s.frame.push_back(rational_point(u));
  if (j.contains("base")) s.base = rational_point(j.at("base"));
  s.validate();
  return s;
}

json cap_witness(const CapWitness& w) {
  return {{"base", rational_point(w.base)},      {"offset", rational_point(w.offset)},
          {"t_sq", rational(w.t_sq)},             {"sign", w.sign},
          {"radius_sq", rational(w.radius_sq)},   {"center_approx", w.center_approx()}};
}

CapWitness cap_witness(const json& j) {
  CapWitness w{rational_point(field(j, "base")), rational_point(field(j, "offset")), rational(field(j, "t_sq")),
               field(j, "sign").get<int>(), rational(field(j, "radius_sq"))};
  if (w.base.size() != w.offset.size() || w.t_sq < 0 || (w.sign != 1 && w.sign != -1)) {
    throw InvalidArgument("malformed cap witness");
  }
  return w;
}

json band(const UnitBand& b) {
  return {{"direction", rational_point(b.direction)},
          {"anchor", rational_point(b.anchor)},
          {"half_width", rational(b.half_width)}};
}

UnitBand band(const json& j) {
  UnitBand b{rational_point(field(j, "direction")), rational_point(field(j, "anchor")), rational(field(j, "half_width"))};
  b.validate();
  return b;
}

json band_family(const BandFamily& f) {
  json bands = json::array();
  for (const auto& b : f.bands()) bands.push_back(band(b));
  return {{"d", f.dim()}, {"bands", bands}, {"nu_sq", rational(f.nu_sq())}};
}

BandFamily band_family(const json& j) {
  std::vector<UnitBand> bands;
  for (const auto& b : field(j, "bands")) bands.push_back(band(b));
  BandFamily f(std::move(bands), field(j, "d").get<int>());
  if (j.contains("nu_sq") && rational(j.at("nu_sq")) != f.nu_sq()) throw InvalidArgument("nu_sq mismatch");
  return f;
}

json count_result(std::size_t count, const json& witness, const std::vector<LatticePoint>& members) {
  return {{"count", count}, {"witness", witness}, {"members", lattice_points(members)}};
}

json circle_count(const CircleCount& c) {
  const auto& t = c.trace;
  json sols = json::array();
  for (const auto& s : t.solutions) {
    sols.push_back({{"x", s.x.get_str()}, {"y", s.y.get_str()}, {"x1", s.x1.get_str()}, {"x2", s.x2.get_str()}, {"point", s.point}});
  }
  json conic = {{"A", t.conic.A.get_str()}, {"B", t.conic.B.get_str()}, {"C", t.conic.C.get_str()},
                {"D", t.conic.D.get_str()}, {"E", t.conic.E.get_str()}, {"F", t.conic.F.get_str()}};
  json norm = {{"P", t.norm.P.get_str()},         {"Q", t.norm.Q.get_str()},
               {"K", t.norm.K.get_str()},         {"delta", t.norm.delta.get_str()},
               {"shift", t.norm.shift.get_str()}, {"squarefree_certified", t.norm.squarefree_certified}};
  json trace = {{"center", rational_point(t.center)},
                {"radius_sq", rational(t.radius_sq)},
                {"plane",
                 {{"i1", t.plane.i1},
                  {"i2", t.plane.i2},
                  {"V0", rational_point(t.plane.v0)},
                  {"V1", rational_point(t.plane.v1)},
                  {"V2", rational_point(t.plane.v2)}}},
                {"conic", conic},
                {"scale", rational(t.scale)},
                {"norm_form", norm},
                {"candidates", t.candidates},
                {"rejected", {{"norm", t.rejected_norm}, {"q", t.rejected_q}, {"a", t.rejected_a}, {"lift", t.rejected_lift}}},
                {"solutions", sols},
                {"r_P_K", t.r_p_k ? json(*t.r_p_k) : json(nullptr)},
                {"tau_K", t.tau_k ? json(t.tau_k->get_str()) : json(nullptr)}};
  return {{"count", c.count}, {"points", lattice_points(c.points)}, {"trace", trace}};
}

json band3d(const Band3D& b) {
  return {{"m", b.profile.m},
          {"alpha", rational(b.profile.alpha)},
          {"beta", rational(b.profile.beta)},
          {"axis", b.axis},
          {"H", high(b.profile.depth())},
          {"R", high(b.profile.radius())},
          {"R0", high(b.profile.inner_radius())}};
}

Band3D band3d(const json& j) {
  Band3D b{BandProfile3D{field(j, "m").get<std::int64_t>(), rational(field(j, "alpha")), rational(field(j, "beta"))},
           lattice_point(field(j, "axis"))};
  b.validate();
  return b;
}

json a13(const A13Census& c) {
  json sectors = json::array();
  for (const auto& s : c.sectors) {
    sectors.push_back({{"index", s.index},
                       {"count", s.count},
                       {"hull_volume", rational(s.hull_volume)},
                       {"coplanar", s.coplanar},
                       {"circle_bound", s.circle_bound ? json(*s.circle_bound) : json(nullptr)},
                       {"points", lattice_points(s.points)}});
  }
  return {{"count", c.count},          {"members", lattice_points(c.members)},
          {"regime", to_string(c.regime)}, {"R", c.R},
          {"lambda", c.lambda},        {"theta", c.theta},
          {"sector_count", c.sector_count}, {"covering_caps", c.covering_caps},
          {"sectors", sectors}};
}

json a23(const A23Census& c) {
  return {{"count", c.count},
          {"members", lattice_points(c.members)},
          {"alpha", c.alpha},
          {"pole_distance", c.pole_distance},
          {"theta", c.theta},
          {"occupied_sectors", c.occupied_sectors},
          {"covering_sectors", c.covering_sectors}};
}

json extremal(const ExtremalConstruction& c) {
  return {{"count", c.count},
          {"eigenfunction", eigenfunction(c.eigenfunction)},
          {"submanifold", submanifold(c.submanifold)},
          {"norm_sq", c.norm_sq},
          {"baseline", c.baseline},
          {"ratio", c.ratio},
          {"max_phase", rational(c.max_phase)},
          {"bracket_holds", c.bracket_holds()}};
}

std::string roundtrip_mismatch(const json& j) { return check(j, ""); }

}  // namespace toral::json_io
