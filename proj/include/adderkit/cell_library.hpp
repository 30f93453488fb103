#pragma once

#include <map>
#include <string>
#include <string_view>

#include "adderkit/netlist.hpp"

namespace adderkit {

// Physical parameters of one standard cell at its single drive strength.
struct CellModel {
  CellKind kind = CellKind::INV;
  double area_um2 = 0.0;
  double intrinsic_delay_ns = 0.0;
  double load_delay_ns_per_ff = 0.0;
  double input_cap_ff = 0.0;  // per input pin
  double leakage_nw = 0.0;

  friend bool operator==(const CellModel&, const CellModel&) = default;
};

struct CellLibrary {
  std::string name;
  double vdd_v = 1.05;
  double output_load_ff = 0.0;  // load seen by every primary output
  std::map<CellKind, CellModel> cells;

  friend bool operator==(const CellLibrary&, const CellLibrary&) = default;
};

// Synthetic stand-in for a 32/28nm library: INV cheapest, XOR2 costliest,
// cost growing with fan-in. Absolute values are not calibrated to silicon.
// Primary outputs carry four INV input loads (fanout-of-4).
CellLibrary default_library();

// Throws IncompleteLibrary when the kind is absent.
const CellModel& lookup(const CellLibrary& library, CellKind kind);

// JSON document:
// { "name", "vdd_v", "output_load_ff",
//   "cells": { "<KIND>": { "area_um2", "intrinsic_delay_ns",
//                          "load_delay_ns_per_ff", "input_cap_ff",
//                          "leakage_nw" } } }
// Every CellKind must be present.
CellLibrary load_library(std::string_view json_text);
CellLibrary load_library_file(const std::string& path);
std::string serialize_library(const CellLibrary& library);

}  // namespace adderkit
