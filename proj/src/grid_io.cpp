#include "pitchkde/grid_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pitchkde/detail/text.hpp"
#include "pitchkde/errors.hpp"

namespace pitchkde {

std::string grid_to_json(const DensityGrid& grid) {
  const GridSpec& s = grid.spec();
  std::string out;
  out.reserve(64 + grid.values().size() * 24);
  out += "{\"x_min\":" + detail::format_double_full(s.x_min);
  out += ",\"x_max\":" + detail::format_double_full(s.x_max);
  out += ",\"y_min\":" + detail::format_double_full(s.y_min);
  out += ",\"y_max\":" + detail::format_double_full(s.y_max);
  out += ",\"cell_size\":" + detail::format_double_full(s.cell_size);
  out += ",\"rows\":" + std::to_string(grid.rows());
  out += ",\"cols\":" + std::to_string(grid.cols());
  out += ",\"values\":[";
  bool first = true;
  for (double v : grid.values()) {
    if (!first) out += ',';
    first = false;
    out += detail::format_double_full(v);
  }
  out += "]}";
  return out;
}

DensityGrid grid_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("grid JSON parse error: ") + e.what());
  }
  for (const char* field :
       {"x_min", "x_max", "y_min", "y_max", "cell_size", "rows", "cols",
        "values"})
    if (!j.contains(field))
      throw SchemaError(std::string("grid JSON missing field '") + field + "'");

  GridSpec spec{j["x_min"].get<double>(), j["x_max"].get<double>(),
                j["y_min"].get<double>(), j["y_max"].get<double>(),
                j["cell_size"].get<double>()};
  spec.validate();
  const auto rows = j["rows"].get<int>();
  const auto cols = j["cols"].get<int>();
  if (rows != spec.rows() || cols != spec.cols())
    throw SchemaError("grid JSON rows/cols disagree with the spec extents");
  auto values = j["values"].get<std::vector<double>>();
  if (values.size() != static_cast<std::size_t>(rows) * cols)
    throw SchemaError("grid JSON value count does not match rows*cols");
  return DensityGrid(spec, std::move(values));
}

void write_grid_json(const std::string& path, const DensityGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write grid JSON: " + path);
  out << grid_to_json(grid);
  if (!out) throw IoError("short write: " + path);
}

DensityGrid read_grid_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open grid JSON: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return grid_from_json(buf.str());
}

}  // namespace pitchkde
