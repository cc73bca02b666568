#include "steklov/zoo.hpp"

#include "steklov/error.hpp"
#include "zoo_data.hpp"

#include <algorithm>
#include <json.hpp>

namespace steklov {
namespace {

const nlohmann::json& document() {
  static const nlohmann::json doc = nlohmann::json::parse(kZooJson);
  return doc;
}

} // namespace

std::string_view zoo_document() { return kZooJson; }

const std::vector<ZooEntry>& surface_zoo() {
  static const std::vector<ZooEntry> zoo = [] {
    std::vector<ZooEntry> out;
    for (const auto& s : document().at("surfaces")) out.push_back({s.at("id").get<std::string>(), surface_spec_from_json(s.at("spec"))});
    return out;
  }();
  return zoo;
}

const ZooEntry& zoo_entry(std::string_view id) {
  const auto& zoo = surface_zoo();
  const auto it = std::find_if(zoo.begin(), zoo.end(), [&](const ZooEntry& e) { return e.id == id; });
  if (it == zoo.end()) throw InvalidArgument("unknown zoo surface '" + std::string(id) + "'");
  return *it;
}

double zoo_h_factor() { return document().at("h_factor").get<double>(); }

double strip_depth(const MetricSurface& surface) {
  const double L = surface.cylindrical_depth();
  if (L > 0.0) return L;
  return (surface.t_max() - surface.t_min()) * surface.scale() / 3.0;
}

double mesh_size(const MetricSurface& surface, double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("mesh size factor must be positive");
  double a = 0.0;
  for (const auto& bc : surface.boundaries()) a = std::max(a, bc.length);
  return factor * std::min(a, strip_depth(surface));
}

std::vector<std::array<double, 2>> boundary_strips(const MetricSurface& surface) {
  const double len = surface.t_max() - surface.t_min();
  const double depth = std::min(strip_depth(surface) / surface.scale(), 0.5 * len);
  return {{surface.t_min(), surface.t_min() + depth}, {surface.t_max() - depth, surface.t_max()}};
}

} // namespace steklov
