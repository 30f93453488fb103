#include "adderkit/cell_library.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adderkit/error.hpp"

namespace adderkit {

namespace {

using nlohmann::json;

CellModel make(CellKind kind, double area, double intrinsic, double load, double cap, double leak) {
  return CellModel{kind, area, intrinsic, load, cap, leak};
}

void check_cell(const CellModel& m) {
  const std::string kind(to_string(m.kind));
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(m.area_um2) || m.area_um2 <= 0.0) throw Error(ErrorCode::InvalidCellValue, kind + ".area_um2 must be positive");
  if (!finite(m.input_cap_ff) || m.input_cap_ff <= 0.0) {
    throw Error(ErrorCode::InvalidCellValue, kind + ".input_cap_ff must be positive");
  }
  if (!finite(m.intrinsic_delay_ns) || m.intrinsic_delay_ns < 0.0) {
    throw Error(ErrorCode::InvalidCellValue, kind + ".intrinsic_delay_ns must be non-negative");
  }
  if (!finite(m.load_delay_ns_per_ff) || m.load_delay_ns_per_ff < 0.0) {
    throw Error(ErrorCode::InvalidCellValue, kind + ".load_delay_ns_per_ff must be non-negative");
  }
  if (!finite(m.leakage_nw) || m.leakage_nw < 0.0) {
    throw Error(ErrorCode::InvalidCellValue, kind + ".leakage_nw must be non-negative");
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::ParseError, where + " is missing '" + key + "'");
  if (!it->is_number()) throw Error(ErrorCode::ParseError, where + "." + key + " must be a number");
  return it->get<double>();
}

}  // namespace

CellLibrary default_library() {
  CellLibrary lib;
  lib.name = "synthetic-28nm";
  lib.vdd_v = 1.05;
  lib.cells = {
      {CellKind::INV, make(CellKind::INV, 1.0, 0.02, 0.010, 1.0, 1.0)},
      {CellKind::AND2, make(CellKind::AND2, 2.0, 0.05, 0.012, 1.2, 2.0)},
      {CellKind::OR2, make(CellKind::OR2, 2.0, 0.05, 0.012, 1.2, 2.0)},
      {CellKind::AND3, make(CellKind::AND3, 2.5, 0.06, 0.013, 1.3, 2.5)},
      {CellKind::OR3, make(CellKind::OR3, 2.5, 0.06, 0.013, 1.3, 2.5)},
      {CellKind::AND4, make(CellKind::AND4, 3.0, 0.07, 0.014, 1.4, 3.0)},
      {CellKind::OR4, make(CellKind::OR4, 3.0, 0.07, 0.014, 1.4, 3.0)},
      {CellKind::XOR2, make(CellKind::XOR2, 3.0, 0.08, 0.015, 1.5, 3.5)},
  };
  lib.output_load_ff = 4.0 * lib.cells.at(CellKind::INV).input_cap_ff;
  return lib;
}

const CellModel& lookup(const CellLibrary& library, CellKind kind) {
  auto it = library.cells.find(kind);
  if (it == library.cells.end()) {
    throw Error(ErrorCode::IncompleteLibrary,
                "library '" + library.name + "' has no " + std::string(to_string(kind)) + " cell");
  }
  return it->second;
}

CellLibrary load_library(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "library document must be a JSON object");

  CellLibrary lib;
  auto name = doc.find("name");
  if (name == doc.end() || !name->is_string()) throw Error(ErrorCode::ParseError, "library 'name' must be a string");
  lib.name = name->get<std::string>();
  lib.vdd_v = number_field(doc, "vdd_v", "library");
  lib.output_load_ff = number_field(doc, "output_load_ff", "library");
  if (!std::isfinite(lib.vdd_v) || lib.vdd_v <= 0.0) throw Error(ErrorCode::InvalidCellValue, "vdd_v must be positive");
  if (!std::isfinite(lib.output_load_ff) || lib.output_load_ff < 0.0) {
    throw Error(ErrorCode::InvalidCellValue, "output_load_ff must be non-negative");
  }

  auto cells = doc.find("cells");
  if (cells == doc.end() || !cells->is_object()) throw Error(ErrorCode::ParseError, "library 'cells' must be an object");
  for (const auto& [key, value] : cells->items()) {
    auto kind = parse_cell_kind(key);
    if (!kind) throw Error(ErrorCode::ParseError, "unknown cell kind '" + key + "'");
    if (!value.is_object()) throw Error(ErrorCode::ParseError, "cell '" + key + "' must be an object");
    CellModel m;
    m.kind = *kind;
    m.area_um2 = number_field(value, "area_um2", key);
    m.intrinsic_delay_ns = number_field(value, "intrinsic_delay_ns", key);
    m.load_delay_ns_per_ff = number_field(value, "load_delay_ns_per_ff", key);
    m.input_cap_ff = number_field(value, "input_cap_ff", key);
    m.leakage_nw = number_field(value, "leakage_nw", key);
    check_cell(m);
    lib.cells[*kind] = m;
  }
  for (CellKind kind : kAllCellKinds) {
    if (!lib.cells.contains(kind)) {
      throw Error(ErrorCode::IncompleteLibrary, "library '" + lib.name + "' has no " + std::string(to_string(kind)) + " cell");
    }
  }
  return lib;
}

CellLibrary load_library_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open library file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_library(ss.str());
}

std::string serialize_library(const CellLibrary& library) {
  json cells = json::object();
  for (const auto& [kind, m] : library.cells) {
    cells[std::string(to_string(kind))] = {
        {"area_um2", m.area_um2},
        {"intrinsic_delay_ns", m.intrinsic_delay_ns},
        {"load_delay_ns_per_ff", m.load_delay_ns_per_ff},
        {"input_cap_ff", m.input_cap_ff},
        {"leakage_nw", m.leakage_nw},
    };
  }
  json doc = {
      {"name", library.name},
      {"vdd_v", library.vdd_v},
      {"output_load_ff", library.output_load_ff},
      {"cells", cells},
  };
  return doc.dump(2) + "\n";
}

}  // namespace adderkit
