#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "adderkit/cell_library.hpp"
#include "adderkit/netlist.hpp"
#include "adderkit/sim.hpp"

namespace adderkit {

struct AnalysisReport {
  std::string design_name;
  std::string arch;
  std::size_t gate_total = 0;
  double power_uw = 0.0;
  double delay_ns = 0.0;
  double area_um2 = 0.0;
  double fom_scaled = 0.0;
  std::vector<GateId> critical_path;
};

struct TimingResult {
  double delay_ns = 0.0;
  std::vector<GateId> path;  // from the input side to the output
};

// Sum of cell areas.
double area(const Netlist& netlist, const CellLibrary& lib);

// Capacitance on a net: input pins of every sink plus the library output
// load when the net is a primary output.
double net_load_ff(const Netlist& netlist, const CellLibrary& lib, NetId net);

// Delay of one gate: intrinsic + load slope * load on its output net.
double gate_delay_ns(const Netlist& netlist, const CellLibrary& lib, GateId gate);

// Longest arrival over all driven primary outputs with primary inputs at
// t = 0. Among equally slow paths the lexicographically smallest gate-id
// sequence wins.
TimingResult critical_path(const Netlist& netlist, const CellLibrary& lib);

struct PowerBreakdown {
  double dynamic_uw = 0.0;
  double leakage_uw = 0.0;

  double total_uw() const { return dynamic_uw + leakage_uw; }
};

// Average power over the simulated window (vectors - 1) * interval:
// sum over nets of 0.5 * C * Vdd^2 * toggles / window, plus cell leakage.
PowerBreakdown power_breakdown(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats);
double power(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats);

// 1e6 / (power * delay * area); every argument must be positive.
double fom(double power_uw, double delay_ns, double area_um2);

// 100 * (fom_x / fom_y - 1)
double improvement_percent(double fom_x, double fom_y);

struct Comparison {
  std::vector<std::size_t> ranking;  // report indices, best FOM first; ties keep input order
  // improvement[i][j]: percent FOM gain of report i over report j.
  std::vector<std::vector<double>> improvement;
};

Comparison compare(const std::vector<AnalysisReport>& reports);

AnalysisReport analyze(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats,
                       std::string design_name, std::string arch);

// Report built from externally supplied power/delay/area figures.
AnalysisReport report_from_metrics(std::string design_name, double power_uw, double delay_ns, double area_um2);

std::string report_json(const AnalysisReport& report);
// design,power_uw,delay_ns,area_um2,fom_scaled; rows in ranking order.
void write_comparison_csv(std::ostream& out, const std::vector<AnalysisReport>& reports, const Comparison& cmp);

// Reads design,power_uw,delay_ns,area_um2 rows (header required).
std::vector<AnalysisReport> read_metrics_csv(std::istream& in);

}  // namespace adderkit
