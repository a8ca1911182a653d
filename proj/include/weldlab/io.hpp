// Serialization of the domain objects to JSON and CSV, and atomic file
// output (temp file + rename, so interrupted runs never leave partial files).
#pragma once

#include <json.hpp>
#include <string>

#include "weldlab/circle_map.hpp"
#include "weldlab/gmc.hpp"
#include "weldlab/pullback.hpp"
#include "weldlab/sleweld.hpp"
#include "weldlab/spectra.hpp"
#include "weldlab/zipper.hpp"

namespace weldlab {

using json = nlohmann::json;

json to_json(const FourierField& field);
FourierField field_from_json(const json& j);

json to_json(const CircleMap& map);
CircleMap circle_map_from_json(const json& j);

json to_json(const BoundaryMeasure& measure);
BoundaryMeasure measure_from_json(const json& j);

json to_json(const OperatorBlocks& blocks);
json to_json(const WeldingSample& sample);
json to_json(const ExperimentReport& report);
json to_json(const JordanCurve& curve);

std::string grid_to_csv(const GridFunction& f);
std::string circle_map_to_csv(const CircleMap& map, std::size_t samples = 1024);
std::string measure_to_csv(const BoundaryMeasure& measure);
std::string report_to_csv(const ExperimentReport& report);

void atomic_write(const std::string& path, const std::string& content);

} // namespace weldlab
