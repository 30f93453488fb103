#include "adderkit/ppa.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "adderkit/error.hpp"

namespace adderkit {

double area(const Netlist& netlist, const CellLibrary& lib) {
  double total = 0.0;
  for (const Gate& g : netlist.gates()) total += lookup(lib, g.kind).area_um2;
  return total;
}

double net_load_ff(const Netlist& netlist, const CellLibrary& lib, NetId net) {
  double load = 0.0;
  for (const Sink& s : netlist.sinks(net)) load += lookup(lib, netlist.gate(s.gate).kind).input_cap_ff;
  if (netlist.is_primary_output(net)) load += lib.output_load_ff;
  return load;
}

double gate_delay_ns(const Netlist& netlist, const CellLibrary& lib, GateId gate) {
  const Gate& g = netlist.gate(gate);
  const CellModel& cell = lookup(lib, g.kind);
  return cell.intrinsic_delay_ns + cell.load_delay_ns_per_ff * net_load_ff(netlist, lib, g.output);
}

TimingResult critical_path(const Netlist& netlist, const CellLibrary& lib) {
  const auto order = topo_order(netlist);
  const std::size_t net_count = netlist.nets().size();
  std::vector<double> arrival(net_count, 0.0);
  std::vector<std::vector<GateId>> path(net_count);

  // Picks the slowest of `nets`, preferring the smallest path on ties.
  auto slowest = [&](auto&& nets) -> std::optional<NetId> {
    std::optional<NetId> best;
    for (NetId n : nets) {
      if (!best || arrival[n] > arrival[*best] ||
          (arrival[n] == arrival[*best] && std::lexicographical_compare(path[n].begin(), path[n].end(),
                                                                        path[*best].begin(), path[*best].end()))) {
        best = n;
      }
    }
    return best;
  };

  for (GateId id : order) {
    const Gate& g = netlist.gate(id);
    const auto from = slowest(g.inputs);
    const double start = from ? arrival[*from] : 0.0;
    arrival[g.output] = start + gate_delay_ns(netlist, lib, id);
    if (from) path[g.output] = path[*from];
    path[g.output].push_back(id);
  }

  std::vector<NetId> driven_outputs;
  for (NetId out : netlist.primary_outputs()) {
    if (netlist.driver(out) != kNoGate) driven_outputs.push_back(out);
  }
  TimingResult result;
  if (auto worst = slowest(driven_outputs)) {
    result.delay_ns = arrival[*worst];
    result.path = path[*worst];
  }
  return result;
}

PowerBreakdown power_breakdown(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats) {
  if (stats.vectors_applied < 2) throw Error(ErrorCode::InsufficientVectors, "power needs at least 2 vectors");
  if (stats.per_net_toggles.size() != netlist.nets().size()) {
    throw Error(ErrorCode::ArityMismatch, "toggle statistics do not match the netlist's nets");
  }
  if (!(stats.interval_ns > 0.0)) throw Error(ErrorCode::InvalidMetric, "vector interval must be positive");

  const double window_ns = static_cast<double>(stats.vectors_applied - 1) * stats.interval_ns;
  const double v2 = lib.vdd_v * lib.vdd_v;
  PowerBreakdown out;
  // fF * V^2 / ns = 1e-6 W
  for (NetId n = 0; n < netlist.nets().size(); ++n) {
    const auto toggles = stats.per_net_toggles[n];
    if (toggles == 0) continue;
    out.dynamic_uw += 0.5 * net_load_ff(netlist, lib, n) * v2 * static_cast<double>(toggles) / window_ns;
  }
  for (const Gate& g : netlist.gates()) out.leakage_uw += lookup(lib, g.kind).leakage_nw;
  out.leakage_uw /= 1000.0;
  return out;
}

double power(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats) {
  return power_breakdown(netlist, lib, stats).total_uw();
}

double fom(double power_uw, double delay_ns, double area_um2) {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(power_uw) || !ok(delay_ns) || !ok(area_um2)) {
    std::ostringstream ss;
    ss << "figure of merit needs positive power, delay and area (got " << power_uw << ", " << delay_ns << ", "
       << area_um2 << ")";
    throw Error(ErrorCode::InvalidMetric, ss.str());
  }
  return 1e6 / (power_uw * delay_ns * area_um2);
}

double improvement_percent(double fom_x, double fom_y) {
  if (!(fom_y > 0.0)) throw Error(ErrorCode::InvalidMetric, "baseline figure of merit must be positive");
  return 100.0 * (fom_x / fom_y - 1.0);
}

Comparison compare(const std::vector<AnalysisReport>& reports) {
  if (reports.size() < 2) throw Error(ErrorCode::NothingToCompare, "need at least two designs to compare");
  Comparison cmp;
  cmp.ranking.resize(reports.size());
  std::iota(cmp.ranking.begin(), cmp.ranking.end(), 0);
  std::stable_sort(cmp.ranking.begin(), cmp.ranking.end(),
                   [&](std::size_t x, std::size_t y) { return reports[x].fom_scaled > reports[y].fom_scaled; });
  cmp.improvement.assign(reports.size(), std::vector<double>(reports.size(), 0.0));
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = 0; j < reports.size(); ++j) {
      cmp.improvement[i][j] = improvement_percent(reports[i].fom_scaled, reports[j].fom_scaled);
    }
  }
  return cmp;
}

AnalysisReport analyze(const Netlist& netlist, const CellLibrary& lib, const ToggleStats& stats,
                       std::string design_name, std::string arch) {
  AnalysisReport r;
  r.design_name = std::move(design_name);
  r.arch = std::move(arch);
  r.gate_total = netlist.gates().size();
  r.area_um2 = area(netlist, lib);
  auto timing = critical_path(netlist, lib);
  r.delay_ns = timing.delay_ns;
  r.critical_path = std::move(timing.path);
  r.power_uw = power(netlist, lib, stats);
  r.fom_scaled = fom(r.power_uw, r.delay_ns, r.area_um2);
  return r;
}

AnalysisReport report_from_metrics(std::string design_name, double power_uw, double delay_ns, double area_um2) {
  AnalysisReport r;
  r.design_name = std::move(design_name);
  r.power_uw = power_uw;
  r.delay_ns = delay_ns;
  r.area_um2 = area_um2;
  r.fom_scaled = fom(power_uw, delay_ns, area_um2);
  return r;
}

std::string report_json(const AnalysisReport& report) {
  nlohmann::ordered_json doc;
  doc["design"] = report.design_name;
  doc["arch"] = report.arch;
  doc["gates"] = report.gate_total;
  doc["power_uw"] = report.power_uw;
  doc["delay_ns"] = report.delay_ns;
  doc["area_um2"] = report.area_um2;
  doc["fom_scaled"] = report.fom_scaled;
  doc["critical_path"] = report.critical_path;
  return doc.dump(2) + "\n";
}

void write_comparison_csv(std::ostream& out, const std::vector<AnalysisReport>& reports, const Comparison& cmp) {
  std::ostringstream ss;
  ss << std::setprecision(10);
  ss << "design,power_uw,delay_ns,area_um2,fom_scaled\n";
  for (std::size_t idx : cmp.ranking) {
    const auto& r = reports[idx];
    ss << r.design_name << ',' << r.power_uw << ',' << r.delay_ns << ',' << r.area_um2 << ',' << r.fom_scaled << '\n';
  }
  out << ss.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

std::vector<AnalysisReport> read_metrics_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<AnalysisReport> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (!header) {
      if (fields != std::vector<std::string>{"design", "power_uw", "delay_ns", "area_um2"}) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                               ": expected header design,power_uw,delay_ns,area_um2");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4 || fields[0].empty()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    rows.push_back(report_from_metrics(fields[0], parse_number(fields[1], line_no), parse_number(fields[2], line_no),
                                       parse_number(fields[3], line_no)));
  }
  if (!header) throw Error(ErrorCode::ParseError, "metrics file is empty");
  return rows;
}

}  // namespace adderkit
