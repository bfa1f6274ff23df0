#pragma once

// Plain-text exporters: CSV tables and OBJ meshes.

#include <ostream>
#include <string>
#include <vector>

#include "heismin/charts.hpp"
#include "heismin/heis_core.hpp"

namespace heismin::io {

/// Shortest text with 17 significant digits ('.' decimal separator).
std::string format_double(double v);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Row-major grid of vertices: index i * nv + j for u-index i, v-index j.
struct Mesh {
  int nu = 0;
  int nv = 0;
  std::vector<Vec3> vertices;
};

Mesh sample_chart(const SurfaceChart& chart, Interval u, Interval v, int nu, int nv);

/// Vertices and quad faces, no normals.
void write_obj(std::ostream& os, const Mesh& mesh);

}  // namespace heismin::io
