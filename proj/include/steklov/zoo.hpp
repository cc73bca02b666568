#pragma once

#include "steklov/surface.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

// Named surfaces shipped with the library (data/zoo.json, compiled in).
struct ZooEntry {
  std::string id;
  SurfaceSpec spec;
};

std::string_view zoo_document();
const std::vector<ZooEntry>& surface_zoo();
// Throws InvalidArgument for an unknown id.
const ZooEntry& zoo_entry(std::string_view id);
double zoo_h_factor();

// Effective strip depth: the product-neighbourhood depth L, or a third of the
// chart length when the surface has none (collars). Metric units.
double strip_depth(const MetricSurface& surface);
// factor * min(a, strip depth), a the longest boundary circle.
double mesh_size(const MetricSurface& surface, double factor);
// Chart bands [lo, hi] of the boundary strips whose union is the domain A.
std::vector<std::array<double, 2>> boundary_strips(const MetricSurface& surface);

} // namespace steklov
