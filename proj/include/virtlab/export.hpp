#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "virtlab/mesh.hpp"
#include "virtlab/patterns.hpp"
#include "virtlab/scene.hpp"

namespace virtlab {

inline constexpr const char* kVrmlHeader = "#VRML V2.0 utf8";

/// Number text used by every writer: at most 6 significant digits, no "-0",
/// magnitudes below 1e-9 written as 0.
std::string format_number(double x);

/// VRML97 world: header, Background, Viewpoints, one Transform per node and
/// a TimeSensor + interpolator + two ROUTEs per track. Validates first.
std::string write_vrml(const Scene& scene);

/// Frame k of n: the scene with every track baked (see bake_frame) and no
/// animation nodes.
std::vector<std::string> frame_documents(const Scene& scene, int n_frames);

/// Writes frame_000.wrl ... into out_dir (created if needed).
std::vector<std::filesystem::path> write_frame_sequence(const Scene& scene, int n_frames,
                                                        const std::filesystem::path& out_dir);

/// Polar plot of jointly normalized cuts on a linear radial scale with grid
/// rings at i / rings; one path per cut, stroked with the cut's colour.
std::string write_svg_polar(const std::vector<patterns::PlaneCut>& cuts, int size_px = 400, int rings = 4);

/// {"vertices":[[x,y,z],...],"faces":[[i,j,k],...],"values":[...]}, numbers
/// rounded to 9 significant digits. "values" only when given.
std::string write_mesh_json(const SurfaceMesh& mesh, const std::optional<std::vector<double>>& values = {});

/// Pattern surface of the grid plus its per-vertex normalized values.
std::string write_mesh_json(const patterns::PatternGrid& pg, patterns::Mapping mapping = patterns::Mapping::field);

/// Scene as JSON; rotation values are [x, y, z, angle in degrees].
std::string write_scene_json(const Scene& scene);

/// Value rounded to 9 significant digits, -0 folded to 0.
double round9(double x);

/// What the minimal reader extracts from a VRML97 document.
struct VrmlSummary {
  std::string header;
  std::map<std::string, int> node_counts;  // by node type name
  int node_total = 0;
  std::vector<std::string> def_names;  // in document order
  std::vector<std::pair<std::string, std::string>> routes;  // (from node.field, to node.field)
};

/// Recursive-descent reader for the node subset write_vrml emits (and
/// generic nodes with scalar, list and node-valued fields).
VrmlSummary read_vrml(const std::string& text);

/// Writes text to a file, creating parent directories; throws io_error.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace virtlab
