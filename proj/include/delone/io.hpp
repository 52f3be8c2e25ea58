#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "delone/analysis.hpp"
#include "delone/chaos.hpp"
#include "delone/cut_project.hpp"
#include "delone/euclid.hpp"
#include "delone/pointset.hpp"
#include "delone/surface.hpp"

/// JSON documents for point sets, surfaces and reports. Doubles are written in
/// shortest round-trip form, so load(dump(x)) reproduces every bit.
namespace delone::io {

using nlohmann::json;

/// {"kind": "pointset", dim, window {lo, hi}, torus, params, coords, flags}.
/// In dim 1 coords is a flat array; otherwise an array of dim-length arrays.
json pointset_to_json(const WindowedPointSet& s, const json& params = json::object());
/// Throws SchemaViolation.
WindowedPointSet pointset_from_json(const json& j);

/// Pointset document with params {t_lo, t_hi} plus `params`; provenance is not stored.
json projected_to_json(const cp::ProjectedSet& ps, const json& params = json::object());
cp::ProjectedSet projected_from_json(const json& j);

/// {"kind": "surface", spec, polygon, vertices, generators, cycles, base_point, mu}.
json surface_to_json(const surface::SurfaceGroup& g);
surface::SurfaceGroup surface_from_json(const json& j);

json to_json(hyp::HPoint p);
json to_json(const hyp::Isometry& g);
json to_json(const hyp::Geodesic& ell);
hyp::Geodesic geodesic_from_json(const json& j);
json to_json(const analysis::DeloneReport& r);
json to_json(const chaos::ClosedGeodesic& c);
json to_json(const chaos::LengthSpectrum& s);
json to_json(const chaos::DalboResult& d);
json to_json(const chaos::ApproxResult& a);
json to_json(const chaos::MatchResult& m);
json to_json(const chaos::TauEstimate& t);
json to_json(const chaos::ConditionReport& c);
json to_json(const euclid::VqResult& v);
json to_json(const euclid::WResult& w);
json to_json(const Box& b);
Box box_from_json(const json& j);

/// Throws SchemaViolation on unreadable or malformed files.
json read_file(const std::string& path);
/// Two-space indented, trailing newline. Throws InvalidArgument if unwritable.
void write_file(const std::string& path, const json& j);

}  // namespace delone::io
