#pragma once

// JSON encodings shared by the CLI and tests. Rationals are "p/q" strings so
// exact values never pass through floating point.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toral/band3d.hpp"
#include "toral/exact.hpp"
#include "toral/quadratic_counting.hpp"
#include "toral/regions.hpp"
#include "toral/restriction.hpp"
#include "toral/shell.hpp"

namespace toral::json_io {

using nlohmann::json;

json rational(const ExactRational& q);
ExactRational rational(const json& j);

json rational_point(const RationalPoint& p);
RationalPoint rational_point(const json& j);

json lattice_points(const std::vector<LatticePoint>& pts);
std::vector<LatticePoint> lattice_points(const json& j);

/// {"d", "m", "points"}
json shell(const Shell& s);
Shell shell(const json& j);

/// {"m", "d", "coeffs": [{"n", "re", "im"}]}. Decoding needs the shell, which
/// is re-enumerated from (d, m).
json eigenfunction(const Eigenfunction& e);
Eigenfunction eigenfunction(const json& j);

/// {"frame": [[..]], "base": [..]}
json submanifold(const GeodesicSubmanifold& s);
GeodesicSubmanifold submanifold(const json& j);

json cap_witness(const CapWitness& w);
CapWitness cap_witness(const json& j);

json band(const UnitBand& b);
UnitBand band(const json& j);

json band_family(const BandFamily& f);
BandFamily band_family(const json& j);

/// {"count", "witness", "members"}; witness may be null.
json count_result(std::size_t count, const json& witness, const std::vector<LatticePoint>& members);

json circle_count(const CircleCount& c);
json band3d(const Band3D& b);
Band3D band3d(const json& j);
json a13(const A13Census& c);
json a23(const A23Census& c);
json extremal(const ExtremalConstruction& c);

/// Re-encodes every typed field a verb emits (shells, eigenfunctions, frames,
/// witnesses, rationals, point lists) and compares with the input. Returns an
/// empty string on success, otherwise the first mismatching key.
std::string roundtrip_mismatch(const json& j);

}  // namespace toral::json_io
