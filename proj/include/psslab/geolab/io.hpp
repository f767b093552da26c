#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "psslab/geolab/geolab.hpp"

namespace psslab::geo {

/// Columns t,x,<names...>, one row per lattice point, %.17g. NaN is written as "nan".
void write_planes_csv(const std::filesystem::path& path, const Lattice& grid, const std::vector<std::string>& names,
                      const std::vector<const Plane*>& planes);

nlohmann::json to_json(const Bracket& b);
nlohmann::json to_json(const SingularLocus& loc);
nlohmann::json to_json(const Rect& r);
nlohmann::json to_json(const DiscReport& r);
nlohmann::json to_json(const CurvatureStats& s);

struct HeatmapOptions {
  std::string title;
  /// Value drawn white; colours saturate at center +- half_range.
  double center = 0;
  double half_range = 1;
  /// Optional per-point mask, drawn hatched.
  const std::vector<std::uint8_t>* mask = nullptr;
  /// Optional u_x zeros, drawn as dots.
  const SingularLocus* zeros = nullptr;
  /// Cap on drawn cells per axis; larger lattices are subsampled.
  std::size_t max_cells = 200;
};

void write_heatmap_svg(const std::filesystem::path& path, const Lattice& grid, const Plane& values,
                       const HeatmapOptions& opt);

}  // namespace psslab::geo
