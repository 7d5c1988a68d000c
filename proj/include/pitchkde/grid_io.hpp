#pragma once

#include <string>

#include "pitchkde/kde.hpp"

namespace pitchkde {

// JSON object {"x_min","x_max","y_min","y_max","cell_size","rows","cols",
// "values":[row-major]}. Numbers carry 17 significant digits, so a
// write/read round trip reproduces every double exactly.
std::string grid_to_json(const DensityGrid& grid);
DensityGrid grid_from_json(const std::string& json_text);

void write_grid_json(const std::string& path, const DensityGrid& grid);
DensityGrid read_grid_json(const std::string& path);

}  // namespace pitchkde
