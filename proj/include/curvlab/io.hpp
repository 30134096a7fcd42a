#pragma once

// File formats: curve JSON, mesh OBJ with a JSON sidecar, and JSON encodings
// of the report types. Doubles are written with round-trip precision.

#include "curvlab/curve.hpp"
#include "curvlab/intgeom.hpp"
#include "curvlab/mesh.hpp"
#include "curvlab/plateau.hpp"
#include "curvlab/projcone.hpp"

#include <filesystem>
#include <string>

#include "json.hpp"

namespace curvlab::io {

using nlohmann::json;

json curve_to_json(const PolylineCurve& curve);
/// Throws invalid_curve for non-finite coordinates, io_error for bad shape.
PolylineCurve curve_from_json(const json& j);

void write_curve(const std::filesystem::path& path, const PolylineCurve& curve);
PolylineCurve read_curve(const std::filesystem::path& path);

/// Several closed components in one file: {"components": [curve, ...]}.
/// A plain curve file reads back as a single component.
void write_curves(const std::filesystem::path& path, const std::vector<PolylineCurve>& curves);
std::vector<PolylineCurve> read_curves(const std::filesystem::path& path);

json to_json(const EstimateReport& r);
json to_json(const SphericalPolyline& sp);
json to_json(const ConeDensityReport& r);
json to_json(const ConvergenceReport& r);
json to_json(const DensityProfile& p);

/// Header "r,theta_surface,theta_cone,theta_total".
std::string profile_csv(const DensityProfile& p);

/// Arc lengths as CSV with header "index,arc_length".
std::string arc_lengths_csv(const SphericalPolyline& sp);

/// Sidecar path for a mesh OBJ: m.obj -> m.mesh.json.
std::filesystem::path sidecar_path(const std::filesystem::path& obj_path);

json mesh_sidecar(const TriangleMesh& mesh);

/// Writes the OBJ and its sidecar.
void write_mesh(const std::filesystem::path& obj_path, const TriangleMesh& mesh);

/// Reads the OBJ and its sidecar and validates the result.
TriangleMesh read_mesh(const std::filesystem::path& obj_path);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace curvlab::io
